use thiserror::Error;

use crate::poly::{Polynomial3, QuaternionPolyField};

#[derive(Debug, Error)]
pub enum Error {
    #[error("axis must be a nonzero vector")]
    ZeroAxis,

    #[error("axes {0} and {1} are collinear")]
    CollinearAxes(usize, usize),

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeTooLarge { degree: u32, cap: u32 },

    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },

    #[error("vector field is not curl-free")]
    NotCurlFree,

    #[error("field is not harmonic: grad(alpha) - rot(u) = {gradient_defect}, div(u) = {divergence}")]
    NotHarmonic {
        gradient_defect: Box<crate::poly::VectorPoly>,
        divergence: Box<Polynomial3>,
    },

    #[error("polynomial is not harmonic: laplacian = {0}")]
    NotHarmonicScalar(Box<Polynomial3>),

    #[error("input is not axial for the axis {0}")]
    NotAxial(String),

    #[error("axis family of size {size} cannot span harmonic polynomials of degree {degree}")]
    SpanTooSmall { size: usize, degree: u32 },

    #[error("expected a family of {expected} axes, found {found}")]
    FamilySize { expected: usize, found: usize },

    #[error("target is not in the span of the available axial fields: {0}")]
    NotInSpan(String),

    #[error("polynomial depends on x3: {0}")]
    NotPlanar(Box<Polynomial3>),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("expected a one-dimensional kernel, found dimension {0}")]
    DegenerateKernel(usize),

    #[error("relation component {0} vanished")]
    ZeroRelationComponent(usize),

    #[error("axis cap {cap} reached before the residual vanished; residual = {residual}")]
    AxisCapReached {
        cap: usize,
        residual: Box<QuaternionPolyField>,
    },

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid linear field: {0}")]
    InvalidLinearField(String),

    #[error("vectors are not orthogonal")]
    NotOrthogonal,

    #[error("point lies outside the closed unit ball (|x|^2 = {0})")]
    OutsideBall(String),

    #[error("functional values are inconsistent: {0}")]
    InconsistentValues(String),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
