//! Exact polynomials in x₁, x₂, x₃ and the quaternion fields built from them.

mod axis;
pub mod calculus;
mod field;
mod polynomial;

pub use axis::Axis;
pub use calculus::{
    div, dir_deriv, dir_deriv_vec, euler_potential, grad, homogeneous_components, integrate_x3,
    is_harmonic_field, laplacian, laplacian_vec, rot,
};
pub use field::{combine, field_coords, field_from_coords, QuaternionPolyField, VectorPoly};
pub use polynomial::{monomials_of_degree, Monomial, Polynomial3};

/// Default cap on the polynomial degree handled by basis construction.
pub const DEFAULT_MAX_DEGREE: u32 = 12;
