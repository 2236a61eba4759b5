//! Exact vector-calculus operators on polynomial fields.

use crate::error::{Error, Result};
use crate::poly::{Axis, Polynomial3, QuaternionPolyField, VectorPoly};
use crate::rational::int;

pub fn grad(a: &Polynomial3) -> VectorPoly {
    VectorPoly([a.deriv(0), a.deriv(1), a.deriv(2)])
}

pub fn div(u: &VectorPoly) -> Polynomial3 {
    let mut out = u.0[0].deriv(0);
    out += &u.0[1].deriv(1);
    out += &u.0[2].deriv(2);
    out
}

pub fn rot(u: &VectorPoly) -> VectorPoly {
    let [u1, u2, u3] = &u.0;
    VectorPoly([
        &u3.deriv(1) - &u2.deriv(2),
        &u1.deriv(2) - &u3.deriv(0),
        &u2.deriv(0) - &u1.deriv(1),
    ])
}

pub fn laplacian(a: &Polynomial3) -> Polynomial3 {
    let mut out = a.deriv(0).deriv(0);
    out += &a.deriv(1).deriv(1);
    out += &a.deriv(2).deriv(2);
    out
}

pub fn laplacian_vec(u: &VectorPoly) -> VectorPoly {
    VectorPoly(std::array::from_fn(|i| laplacian(&u.0[i])))
}

/// `w · ∇a` with the unnormalized axis vector.
pub fn dir_deriv(a: &Polynomial3, w: &Axis) -> Polynomial3 {
    grad(a).dot_const(w.vector())
}

pub fn dir_deriv_vec(u: &VectorPoly, w: &Axis) -> VectorPoly {
    VectorPoly(std::array::from_fn(|i| dir_deriv(&u.0[i], w)))
}

/// The two defects of `∇α = rot u, div u = 0`.
pub fn harmonic_defects(p: &QuaternionPolyField) -> (VectorPoly, Polynomial3) {
    (&grad(&p.alpha) - &rot(&p.u), div(&p.u))
}

pub fn is_harmonic_field(p: &QuaternionPolyField) -> bool {
    let (g, d) = harmonic_defects(p);
    g.is_zero() && d.is_zero()
}

/// Fails with the defect polynomials when `p` is not harmonic.
pub fn require_harmonic(p: &QuaternionPolyField) -> Result<()> {
    let (g, d) = harmonic_defects(p);
    if g.is_zero() && d.is_zero() {
        Ok(())
    } else {
        Err(Error::NotHarmonic {
            gradient_defect: Box::new(g),
            divergence: Box::new(d),
        })
    }
}

pub fn integrate_x3(a: &Polynomial3) -> Polynomial3 {
    a.integrate_x3()
}

/// Potential `β = (x·u)/(n+1)` of a curl-free field homogeneous of degree `n`.
///
/// The Euler identity `x·∇β = (n+1)β` gives `∇β = u` whenever `rot u = 0`;
/// the identity is re-checked on the result.
pub fn euler_potential(u: &VectorPoly, n: u32) -> Result<Polynomial3> {
    if !u.is_homogeneous_of(n) {
        return Err(Error::NotHomogeneous { expected: n });
    }
    if !rot(u).is_zero() {
        return Err(Error::NotCurlFree);
    }
    let beta = u.radial().scale(&(int(1) / int(n as i64 + 1)));
    if grad(&beta) != *u {
        return Err(Error::NotCurlFree);
    }
    Ok(beta)
}

/// Splits all four components by total degree, dropping empty degrees.
pub fn homogeneous_components(p: &QuaternionPolyField) -> Vec<(u32, QuaternionPolyField)> {
    let mut degrees: Vec<u32> = p
        .components()
        .iter()
        .flat_map(|c| c.homogeneous_parts().into_keys())
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    degrees
        .into_iter()
        .map(|n| (n, p.homogeneous_part(n)))
        .collect()
}
