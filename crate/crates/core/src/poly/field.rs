use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::poly::Polynomial3;
use crate::quaternion::Quaternion;
use crate::rational::{Rational, Vec3};

/// Vector polynomial field `u₁i + u₂j + u₃k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VectorPoly(pub [Polynomial3; 3]);

impl VectorPoly {
    pub fn new(c1: Polynomial3, c2: Polynomial3, c3: Polynomial3) -> Self {
        VectorPoly([c1, c2, c3])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(v: &Vec3) -> Self {
        VectorPoly(v.0.clone().map(Polynomial3::constant))
    }

    /// The field `s · w` for a scalar polynomial `s` and a constant vector `w`.
    pub fn along(s: &Polynomial3, w: &Vec3) -> Self {
        VectorPoly(std::array::from_fn(|i| s.scale(&w.0[i])))
    }

    pub fn c(&self, i: usize) -> &Polynomial3 {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial3::is_zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.iter().filter_map(Polynomial3::degree).max()
    }

    pub fn is_homogeneous_of(&self, n: u32) -> bool {
        self.0.iter().all(|c| c.is_homogeneous_of(n))
    }

    pub fn homogeneous_part(&self, n: u32) -> VectorPoly {
        VectorPoly(std::array::from_fn(|i| self.0[i].homogeneous_part(n)))
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<u32, VectorPoly> {
        let degrees: std::collections::BTreeSet<u32> = self
            .0
            .iter()
            .flat_map(|c| c.homogeneous_parts().into_keys())
            .collect();
        degrees
            .into_iter()
            .map(|n| (n, self.homogeneous_part(n)))
            .collect()
    }

    pub fn scale(&self, s: &Rational) -> VectorPoly {
        VectorPoly(std::array::from_fn(|i| self.0[i].scale(s)))
    }

    pub fn mul_scalar_poly(&self, s: &Polynomial3) -> VectorPoly {
        VectorPoly(std::array::from_fn(|i| &self.0[i] * s))
    }

    /// Pointwise inner product with a constant vector.
    pub fn dot_const(&self, w: &Vec3) -> Polynomial3 {
        let mut out = Polynomial3::zero();
        for i in 0..3 {
            out += &self.0[i].scale(&w.0[i]);
        }
        out
    }

    pub fn dot(&self, o: &VectorPoly) -> Polynomial3 {
        let mut out = Polynomial3::zero();
        for i in 0..3 {
            out += &(&self.0[i] * &o.0[i]);
        }
        out
    }

    pub fn cross(&self, o: &VectorPoly) -> VectorPoly {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &o.0;
        VectorPoly([
            &(a2 * b3) - &(a3 * b2),
            &(a3 * b1) - &(a1 * b3),
            &(a1 * b2) - &(a2 * b1),
        ])
    }

    pub fn cross_const(&self, w: &Vec3) -> VectorPoly {
        self.cross(&VectorPoly::constant(w))
    }

    /// `x · u`, the radial component scaled by |x|.
    pub fn radial(&self) -> Polynomial3 {
        let mut out = Polynomial3::zero();
        for i in 0..3 {
            out += &(&Polynomial3::var(i) * &self.0[i]);
        }
        out
    }

    pub fn eval(&self, x: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|i| self.0[i].eval(x)))
    }

    pub fn eval_f64(&self, x: [f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| self.0[i].eval_f64(x))
    }
}

impl fmt::Display for VectorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl Add for &VectorPoly {
    type Output = VectorPoly;
    fn add(self, o: &VectorPoly) -> VectorPoly {
        VectorPoly(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &VectorPoly {
    type Output = VectorPoly;
    fn sub(self, o: &VectorPoly) -> VectorPoly {
        VectorPoly(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &VectorPoly {
    type Output = VectorPoly;
    fn neg(self) -> VectorPoly {
        VectorPoly(std::array::from_fn(|i| -&self.0[i]))
    }
}

/// A quaternion field `p = {α, u}` with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuaternionPolyField {
    pub alpha: Polynomial3,
    pub u: VectorPoly,
}

impl QuaternionPolyField {
    pub fn new(alpha: Polynomial3, u: VectorPoly) -> Self {
        QuaternionPolyField { alpha, u }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant field equal to `q` everywhere.
    pub fn constant(q: &Quaternion) -> Self {
        Self::new(Polynomial3::constant(q.scalar.clone()), VectorPoly::constant(&q.vec))
    }

    /// The components `α, u₁, u₂, u₃` in order.
    pub fn components(&self) -> [&Polynomial3; 4] {
        [&self.alpha, &self.u.0[0], &self.u.0[1], &self.u.0[2]]
    }

    pub fn from_components(c: [Polynomial3; 4]) -> Self {
        let [a, u1, u2, u3] = c;
        Self::new(a, VectorPoly([u1, u2, u3]))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.u.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.components().iter().filter_map(|c| c.degree()).max()
    }

    pub fn is_homogeneous_of(&self, n: u32) -> bool {
        self.components().iter().all(|c| c.is_homogeneous_of(n))
    }

    pub fn homogeneous_part(&self, n: u32) -> QuaternionPolyField {
        Self::new(self.alpha.homogeneous_part(n), self.u.homogeneous_part(n))
    }

    pub fn scale(&self, s: &Rational) -> QuaternionPolyField {
        Self::new(self.alpha.scale(s), self.u.scale(s))
    }

    /// Pointwise quaternion product `{αβ − u·v, αv + βu + u∧v}`.
    pub fn mul(&self, o: &QuaternionPolyField) -> QuaternionPolyField {
        let alpha = &(&self.alpha * &o.alpha) - &self.u.dot(&o.u);
        let u = &(&o.u.mul_scalar_poly(&self.alpha) + &self.u.mul_scalar_poly(&o.alpha))
            + &self.u.cross(&o.u);
        Self::new(alpha, u)
    }

    /// Left action of a constant quaternion: `(hp)(x) = h · p(x)`.
    pub fn left_mul(&self, h: &Quaternion) -> QuaternionPolyField {
        QuaternionPolyField::constant(h).mul(self)
    }

    pub fn eval(&self, x: &Vec3) -> Quaternion {
        Quaternion::new(self.alpha.eval(x), self.u.eval(x))
    }

    pub fn eval_f64(&self, x: [f64; 3]) -> [f64; 4] {
        let u = self.u.eval_f64(x);
        [self.alpha.eval_f64(x), u[0], u[1], u[2]]
    }

    /// Value at the origin.
    pub fn at_origin(&self) -> Quaternion {
        self.eval(&Vec3::zero())
    }

    pub fn constant_term(&self) -> Rational {
        self.alpha.coeff(&crate::poly::Monomial::ONE)
    }

    pub fn is_scalar_free(&self) -> bool {
        self.alpha.is_zero()
    }

    /// Returns `Some(c)` when every coefficient is `c` times the matching one of `other`.
    pub fn ratio_to(&self, other: &QuaternionPolyField) -> Option<Rational> {
        let (a, b) = (self.components(), other.components());
        let mut ratio: Option<Rational> = None;
        for i in 0..4 {
            for (m, cb) in b[i].terms() {
                let ca = a[i].coeff(m);
                let r = ca / cb;
                match &ratio {
                    None => ratio = Some(r),
                    Some(existing) if *existing != r => return None,
                    _ => {}
                }
            }
        }
        let r = ratio.unwrap_or_else(Rational::zero);
        (other.scale(&r) == *self).then_some(r)
    }
}

impl fmt::Display for QuaternionPolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.alpha, self.u)
    }
}

impl Add for &QuaternionPolyField {
    type Output = QuaternionPolyField;
    fn add(self, o: &QuaternionPolyField) -> QuaternionPolyField {
        QuaternionPolyField::new(&self.alpha + &o.alpha, &self.u + &o.u)
    }
}

impl Sub for &QuaternionPolyField {
    type Output = QuaternionPolyField;
    fn sub(self, o: &QuaternionPolyField) -> QuaternionPolyField {
        QuaternionPolyField::new(&self.alpha - &o.alpha, &self.u - &o.u)
    }
}

impl Neg for &QuaternionPolyField {
    type Output = QuaternionPolyField;
    fn neg(self) -> QuaternionPolyField {
        QuaternionPolyField::new(-&self.alpha, -&self.u)
    }
}

impl std::iter::Sum for QuaternionPolyField {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(QuaternionPolyField::zero(), |acc, p| &acc + &p)
    }
}

impl<'a> std::iter::Sum<&'a QuaternionPolyField> for QuaternionPolyField {
    fn sum<I: Iterator<Item = &'a QuaternionPolyField>>(iter: I) -> Self {
        iter.fold(QuaternionPolyField::zero(), |acc, p| &acc + p)
    }
}

impl std::iter::Sum for Polynomial3 {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Polynomial3::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<'a> std::iter::Sum<&'a Polynomial3> for Polynomial3 {
    fn sum<I: Iterator<Item = &'a Polynomial3>>(iter: I) -> Self {
        iter.fold(Polynomial3::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

/// Flattened coordinates of a field on `monomials` for each of the four components.
pub fn field_coords(p: &QuaternionPolyField, monomials: &[crate::poly::Monomial]) -> Vec<Rational> {
    p.components()
        .iter()
        .flat_map(|c| c.coords(monomials))
        .collect()
}

pub fn field_from_coords(monomials: &[crate::poly::Monomial], coords: &[Rational]) -> QuaternionPolyField {
    let k = monomials.len();
    QuaternionPolyField::from_components(std::array::from_fn(|i| {
        Polynomial3::from_coords(monomials, &coords[i * k..(i + 1) * k])
    }))
}

/// Exact linear combination `Σ cᵢ fᵢ`.
pub fn combine(fields: &[QuaternionPolyField], coeffs: &[Rational]) -> QuaternionPolyField {
    fields
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(f, c)| f.scale(c))
        .sum()
}
