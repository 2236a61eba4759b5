//! Exact bases of harmonic polynomial spaces and their axial subspaces.
//!
//! Every basis is the kernel of a linear constraint operator restricted to
//! homogeneous polynomials of one degree, computed by [`crate::linalg`].
//! Axes are never normalized: for an axis `w` the harmonic axial field built
//! from `φ` is `{φ, ψ̃·w/(w·w)}` with `∇ψ̃ = w ∧ ∇φ`, which is exactly the
//! unit-axis field `{φ, ψω}` for `ω = w/|w|`, `ψ = ψ̃/|w|`.
//!
//! Orientation: the conjugate is taken with the right-hand rule about `w`,
//! so for `w = k` the pair `(φ, ψ)` is `(Re, Im)` of a holomorphic function
//! of `x₁ + i x₂`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::calculus::require_harmonic;
use crate::poly::{
    dir_deriv, euler_potential, grad, laplacian, monomials_of_degree, rot, div, Axis, Monomial,
    Polynomial3, QuaternionPolyField, VectorPoly, DEFAULT_MAX_DEGREE,
};
use crate::rational::{Rational, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// Ṗ_n: homogeneous harmonic scalars.
    ScalarHarmonic,
    /// Ṗ_n^w: the w-axial part of Ṗ_n.
    ScalarAxial,
    /// 𝒫̇_n: homogeneous harmonic quaternion fields.
    QuatHarmonic,
    /// 𝒫̇_n^w: harmonic fields `{φ, s·w}` constant along w.
    QuatAxial,
    /// 𝒫̇_{0n}: harmonic fields with zero scalar part.
    QuatZeroScalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceBasis<T> {
    pub degree: u32,
    pub kind: SpaceKind,
    pub axis: Option<Axis>,
    pub elements: Vec<T>,
    /// Set for the axial scalar space in degree 0, which is all constants.
    pub degenerate: bool,
}

impl<T> SpaceBasis<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub type ScalarBasis = SpaceBasis<Polynomial3>;
pub type QuatBasis = SpaceBasis<QuaternionPolyField>;

type CacheKey = (SpaceKind, u32, Option<[BigInt; 3]>);

/// Builds and caches bases up to a degree cap.
#[derive(Debug)]
pub struct SpaceBuilder {
    max_degree: u32,
    scalar: RwLock<HashMap<CacheKey, Arc<ScalarBasis>>>,
    quat: RwLock<HashMap<CacheKey, Arc<QuatBasis>>>,
}

impl Default for SpaceBuilder {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_DEGREE)
    }
}

fn cached<T>(
    map: &RwLock<HashMap<CacheKey, Arc<T>>>,
    key: CacheKey,
    build: impl FnOnce() -> T,
) -> Arc<T> {
    if let Some(hit) = map.read().expect("basis cache poisoned").get(&key) {
        return hit.clone();
    }
    let built = Arc::new(build());
    // A concurrent builder may have won; keep whichever landed first.
    map.write()
        .expect("basis cache poisoned")
        .entry(key)
        .or_insert(built)
        .clone()
}

impl SpaceBuilder {
    pub fn new(max_degree: u32) -> Self {
        SpaceBuilder {
            max_degree,
            scalar: RwLock::default(),
            quat: RwLock::default(),
        }
    }

    /// Process-wide builder with the default degree cap.
    pub fn global() -> &'static SpaceBuilder {
        static GLOBAL: OnceLock<SpaceBuilder> = OnceLock::new();
        GLOBAL.get_or_init(SpaceBuilder::default)
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    fn check_degree(&self, n: u32) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::DegreeTooLarge {
                degree: n,
                cap: self.max_degree,
            });
        }
        Ok(())
    }

    pub fn harmonic_scalar(&self, n: u32) -> Result<Arc<ScalarBasis>> {
        self.check_degree(n)?;
        Ok(cached(&self.scalar, (SpaceKind::ScalarHarmonic, n, None), || {
            let elements = scalar_kernel(n, |m| vec![laplacian(m)]);
            SpaceBasis {
                degree: n,
                kind: SpaceKind::ScalarHarmonic,
                axis: None,
                elements,
                degenerate: false,
            }
        }))
    }

    pub fn axial_scalar(&self, n: u32, w: &Axis) -> Result<Arc<ScalarBasis>> {
        self.check_degree(n)?;
        let key = (SpaceKind::ScalarAxial, n, Some(w.line_key()));
        Ok(cached(&self.scalar, key, || {
            let elements = scalar_kernel(n, |m| vec![laplacian(m), dir_deriv(m, w)]);
            SpaceBasis {
                degree: n,
                kind: SpaceKind::ScalarAxial,
                axis: Some(w.clone()),
                elements,
                degenerate: n == 0,
            }
        }))
    }

    pub fn quat_harmonic(&self, n: u32) -> Result<Arc<QuatBasis>> {
        self.check_degree(n)?;
        Ok(cached(&self.quat, (SpaceKind::QuatHarmonic, n, None), || {
            SpaceBasis {
                degree: n,
                kind: SpaceKind::QuatHarmonic,
                axis: None,
                elements: quat_kernel(n, harmonic_constraints),
                degenerate: false,
            }
        }))
    }

    pub fn quat_axial(&self, n: u32, w: &Axis) -> Result<Arc<QuatBasis>> {
        self.check_degree(n)?;
        let key = (SpaceKind::QuatAxial, n, Some(w.line_key()));
        Ok(cached(&self.quat, key, || {
            let elements = quat_kernel(n, |p| {
                let mut out = harmonic_constraints(p);
                out.extend(p.components().iter().map(|c| dir_deriv(c, w)));
                out.extend(p.u.cross_const(w.vector()).0);
                out
            });
            SpaceBasis {
                degree: n,
                kind: SpaceKind::QuatAxial,
                axis: Some(w.clone()),
                elements,
                degenerate: false,
            }
        }))
    }

    pub fn quat_zero_scalar(&self, n: u32) -> Result<Arc<QuatBasis>> {
        self.check_degree(n)?;
        Ok(cached(&self.quat, (SpaceKind::QuatZeroScalar, n, None), || {
            let elements = quat_kernel(n, |p| {
                let mut out = harmonic_constraints(p);
                out.push(p.alpha.clone());
                out
            });
            SpaceBasis {
                degree: n,
                kind: SpaceKind::QuatZeroScalar,
                axis: None,
                elements,
                degenerate: false,
            }
        }))
    }
}

fn harmonic_constraints(p: &QuaternionPolyField) -> Vec<Polynomial3> {
    let mut out: Vec<Polynomial3> = p.components().iter().map(|c| laplacian(c)).collect();
    out.extend((&grad(&p.alpha) - &rot(&p.u)).0);
    out.push(div(&p.u));
    out
}

/// Kernel of a linear operator, given the image of each unit input as a tuple of polynomials.
///
/// Returns coefficient vectors over the inputs.
pub fn operator_kernel(images: &[Vec<Polynomial3>]) -> Vec<Vec<Rational>> {
    let (matrix, _) = image_matrix(images);
    matrix.nullspace()
}

/// Dimension of the span of polynomial tuples.
pub fn span_rank(vectors: &[Vec<Polynomial3>]) -> usize {
    image_matrix(vectors).0.rank()
}

fn image_matrix(images: &[Vec<Polynomial3>]) -> (Matrix, Vec<(usize, Monomial)>) {
    let keys: Vec<(usize, Monomial)> = images
        .iter()
        .flat_map(|img| {
            img.iter()
                .enumerate()
                .flat_map(|(slot, p)| p.terms().map(move |(m, _)| (slot, *m)))
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: HashMap<(usize, Monomial), usize> =
        keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let columns: Vec<Vec<Rational>> = images
        .iter()
        .map(|img| {
            let mut col = vec![Rational::zero(); keys.len()];
            for (slot, p) in img.iter().enumerate() {
                for (m, c) in p.terms() {
                    col[index[&(slot, *m)]] = c.clone();
                }
            }
            col
        })
        .collect();
    (Matrix::from_columns(&columns, keys.len()), keys)
}

fn scalar_kernel(n: u32, op: impl Fn(&Polynomial3) -> Vec<Polynomial3>) -> Vec<Polynomial3> {
    let monomials = monomials_of_degree(n);
    let images: Vec<Vec<Polynomial3>> = monomials
        .iter()
        .map(|m| op(&Polynomial3::term(*m, Rational::from_integer(1.into()))))
        .collect();
    operator_kernel(&images)
        .iter()
        .map(|v| Polynomial3::from_coords(&monomials, v))
        .collect()
}

fn quat_units(n: u32) -> (Vec<Monomial>, Vec<QuaternionPolyField>) {
    let monomials = monomials_of_degree(n);
    let mut units = Vec::with_capacity(4 * monomials.len());
    for slot in 0..4 {
        for m in &monomials {
            let mut comps: [Polynomial3; 4] = Default::default();
            comps[slot] = Polynomial3::term(*m, Rational::from_integer(1.into()));
            units.push(QuaternionPolyField::from_components(comps));
        }
    }
    (monomials, units)
}

fn quat_kernel(
    n: u32,
    op: impl Fn(&QuaternionPolyField) -> Vec<Polynomial3>,
) -> Vec<QuaternionPolyField> {
    let (monomials, units) = quat_units(n);
    let images: Vec<Vec<Polynomial3>> = units.iter().map(&op).collect();
    operator_kernel(&images)
        .iter()
        .map(|v| crate::poly::field_from_coords(&monomials, v))
        .collect()
}

pub fn basis_harmonic_scalar(n: u32) -> Result<Arc<ScalarBasis>> {
    SpaceBuilder::global().harmonic_scalar(n)
}

pub fn basis_axial_scalar(n: u32, w: &Axis) -> Result<Arc<ScalarBasis>> {
    SpaceBuilder::global().axial_scalar(n, w)
}

pub fn basis_quat_harmonic(n: u32) -> Result<Arc<QuatBasis>> {
    SpaceBuilder::global().quat_harmonic(n)
}

pub fn basis_quat_axial(n: u32, w: &Axis) -> Result<Arc<QuatBasis>> {
    SpaceBuilder::global().quat_axial(n, w)
}

pub fn basis_quat_zero_scalar(n: u32) -> Result<Arc<QuatBasis>> {
    SpaceBuilder::global().quat_zero_scalar(n)
}

pub fn is_axial_scalar(a: &Polynomial3, w: &Axis) -> bool {
    dir_deriv(a, w).is_zero()
}

/// For a field `{φ, s·w}` constant along `w`, returns `(φ, s)`.
pub fn axial_profile(p: &QuaternionPolyField, w: &Axis) -> Option<(Polynomial3, Polynomial3)> {
    if !p.components().iter().all(|c| is_axial_scalar(c, w)) {
        return None;
    }
    let v = w.vector();
    let i = (0..3).find(|&i| !v.0[i].is_zero())?;
    let s = p.u.0[i].scale(&(Rational::from_integer(1.into()) / &v.0[i]));
    (VectorPoly::along(&s, v) == p.u).then(|| (p.alpha.clone(), s))
}

/// Constant along `w` with vector part parallel to `w`.
pub fn is_axial_field(p: &QuaternionPolyField, w: &Axis) -> bool {
    axial_profile(p, w).is_some()
}

pub fn is_axial_harmonic(p: &QuaternionPolyField, w: &Axis) -> bool {
    is_axial_field(p, w) && crate::poly::is_harmonic_field(p)
}

/// An axis along which `p` is axial, read off from its vector part.
///
/// Returns `None` when the vector part vanishes or is not parallel to a fixed direction.
pub fn detect_axis(p: &QuaternionPolyField) -> Option<Axis> {
    let m = p
        .u
        .0
        .iter()
        .filter_map(|c| c.first_term().map(|(m, _)| *m))
        .min()?;
    let w = Axis::new(Vec3(std::array::from_fn(|i| p.u.0[i].coeff(&m)))).ok()?;
    is_axial_field(p, &w).then_some(w)
}

/// Result of [`conjugate`]: `∇ψ̃ = w ∧ ∇φ`, with `scale = w·w`.
#[derive(Clone, Debug, PartialEq)]
pub struct Conjugate {
    pub psi_tilde: Polynomial3,
    pub scale: Rational,
}

/// The conjugate of an axial harmonic `φ` about `w` (unnormalized).
pub fn conjugate(phi: &Polynomial3, w: &Axis) -> Result<Conjugate> {
    let lap = laplacian(phi);
    if !lap.is_zero() {
        return Err(Error::NotHarmonicScalar(Box::new(lap)));
    }
    if !is_axial_scalar(phi, w) {
        return Err(Error::NotAxial(w.to_string()));
    }
    let target = VectorPoly::constant(w.vector()).cross(&grad(phi));
    let mut psi = Polynomial3::zero();
    for (m, part) in target.homogeneous_parts() {
        psi += &euler_potential(&part, m)?;
    }
    debug_assert_eq!(grad(&psi), target);
    Ok(Conjugate {
        psi_tilde: psi,
        scale: w.norm_sq(),
    })
}

/// `{φ, (ψ̃/(w·w))·w}`, the harmonic w-axial field with scalar part `φ`.
pub fn axial_lift(phi: &Polynomial3, w: &Axis) -> Result<QuaternionPolyField> {
    let c = conjugate(phi, w)?;
    let s = c.psi_tilde.scale(&(Rational::from_integer(1.into()) / &c.scale));
    let p = QuaternionPolyField::new(phi.clone(), VectorPoly::along(&s, w.vector()));
    require_harmonic(&p)?;
    Ok(p)
}

/// Product of two harmonic fields axial about the same `w`:
/// `{φλ − st(w·w), (φt + sλ)·w}` for `p = {φ, s·w}`, `q = {λ, t·w}`.
pub fn coaxial_mul(
    p: &QuaternionPolyField,
    q: &QuaternionPolyField,
    w: &Axis,
) -> Result<QuaternionPolyField> {
    let (phi, s) = axial_profile(p, w).ok_or_else(|| Error::NotAxial(w.to_string()))?;
    let (lambda, t) = axial_profile(q, w).ok_or_else(|| Error::NotAxial(w.to_string()))?;
    require_harmonic(p)?;
    require_harmonic(q)?;
    let alpha = &(&phi * &lambda) - &(&s * &t).scale(&w.norm_sq());
    let coef = &(&phi * &t) + &(&s * &lambda);
    Ok(QuaternionPolyField::new(
        alpha,
        VectorPoly::along(&coef, w.vector()),
    ))
}

/// Exact span-membership test.
pub fn in_span(elements: &[QuaternionPolyField], candidate: &QuaternionPolyField) -> bool {
    let as_tuple = |p: &QuaternionPolyField| -> Vec<Polynomial3> {
        p.components().iter().map(|c| (*c).clone()).collect()
    };
    let mut vecs: Vec<Vec<Polynomial3>> = elements.iter().map(as_tuple).collect();
    let before = span_rank(&vecs);
    vecs.push(as_tuple(candidate));
    span_rank(&vecs) == before
}

/// Real and imaginary parts of `(x₁ + i x₂)ⁿ`.
pub fn planar_harmonics(n: u32) -> (Polynomial3, Polynomial3) {
    let z = (Polynomial3::var(0), Polynomial3::var(1));
    let mut re = Polynomial3::one();
    let mut im = Polynomial3::zero();
    for _ in 0..n {
        let new_re = &(&re * &z.0) - &(&im * &z.1);
        let new_im = &(&re * &z.1) + &(&im * &z.0);
        re = new_re;
        im = new_im;
    }
    (re, im)
}
