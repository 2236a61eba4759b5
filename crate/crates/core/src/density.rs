//! Divergence correction of harmonic vector polynomials and completion to
//! harmonic quaternion fields.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::calculus::require_harmonic;
use crate::poly::{
    div, euler_potential, laplacian, laplacian_vec, rot, Monomial, Polynomial3,
    QuaternionPolyField, VectorPoly,
};
use crate::rational::{int, Rational, Vec3};
use crate::sampling::BallGrid;
use crate::spaces::planar_harmonics;

type C = Complex<Rational>;

fn require_planar(p: &Polynomial3) -> Result<()> {
    if p.is_planar() {
        Ok(())
    } else {
        Err(Error::NotPlanar(Box::new(p.clone())))
    }
}

/// A particular solution `q` of `Δq = f` in the plane, built monomial by monomial
/// by integrating twice in `x₁` and sweeping the `x₂²` defect downward.
pub fn poisson_particular_2d(f: &Polynomial3) -> Result<Polynomial3> {
    require_planar(f)?;
    let mut memo = BTreeMap::new();
    let mut q = Polynomial3::zero();
    for (m, c) in f.terms() {
        q += &monomial_solution(m.0[0], m.0[1], &mut memo).scale(c);
    }
    debug_assert_eq!(laplacian(&q), *f);
    Ok(q)
}

fn monomial_solution(a: u32, b: u32, memo: &mut BTreeMap<(u32, u32), Polynomial3>) -> Polynomial3 {
    if let Some(s) = memo.get(&(a, b)) {
        return s.clone();
    }
    let d = int(((a + 1) * (a + 2)) as i64);
    let mut s = Polynomial3::term(Monomial([a + 2, b, 0]), Rational::one() / &d);
    if b >= 2 {
        let corr = monomial_solution(a + 2, b - 2, memo);
        s -= &corr.scale(&(int((b * (b - 1)) as i64) / &d));
    }
    memo.insert((a, b), s.clone());
    s
}

type ZPoly = BTreeMap<(u32, u32), C>;

fn zmul(p: &ZPoly, q: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for ((a, b), c) in p {
        for ((d, e), f) in q {
            let e = out.entry((a + d, b + e)).or_insert_with(C::zero);
            *e = &*e + c * f;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn zpow(base: &ZPoly, n: u32, cache: &mut Vec<ZPoly>) -> ZPoly {
    if cache.is_empty() {
        cache.push(ZPoly::from([((0, 0), C::one())]));
    }
    while cache.len() <= n as usize {
        let next = zmul(cache.last().unwrap(), base);
        cache.push(next);
    }
    cache[n as usize].clone()
}

/// The harmonic polynomial `r` in `x₁, x₂` that agrees with `q` on the unit circle.
///
/// `q` is rewritten in `z, z̄`, reduced with `z z̄ = 1`, and read back in the
/// basis `1, R_k, I_k`.
pub fn dirichlet_harmonic_2d(q: &Polynomial3) -> Result<Polynomial3> {
    require_planar(q)?;
    let half = Rational::new(1.into(), 2.into());
    // x₁ = (z + z̄)/2, x₂ = −i(z − z̄)/2
    let x1: ZPoly = ZPoly::from([
        ((1, 0), C::new(half.clone(), Rational::zero())),
        ((0, 1), C::new(half.clone(), Rational::zero())),
    ]);
    let x2: ZPoly = ZPoly::from([
        ((1, 0), C::new(Rational::zero(), -half.clone())),
        ((0, 1), C::new(Rational::zero(), half)),
    ]);
    let (mut c1, mut c2) = (Vec::new(), Vec::new());
    // reduced[k] for k ≥ 0 holds z^k, for k < 0 holds z̄^{-k}
    let mut reduced: BTreeMap<i64, C> = BTreeMap::new();
    for (m, c) in q.terms() {
        let t = zmul(&zpow(&x1, m.0[0], &mut c1), &zpow(&x2, m.0[1], &mut c2));
        for ((j, l), v) in t {
            let e = reduced.entry(j as i64 - l as i64).or_insert_with(C::zero);
            *e = &*e + v * C::new(c.clone(), Rational::zero());
        }
    }
    let get = |k: i64| reduced.get(&k).cloned().unwrap_or_else(C::zero);
    let mut r = Polynomial3::constant(get(0).re);
    let max = reduced.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0);
    for k in 1..=max {
        let (cz, cb) = (get(k as i64), get(-(k as i64)));
        let (rk, ik) = planar_harmonics(k as u32);
        r += &rk.scale(&(&cz.re + &cb.re));
        r += &ik.scale(&(&cb.im - &cz.im));
    }
    Ok(r)
}

/// Exact test that `p` vanishes on the unit circle, i.e. `x₁² + x₂² − 1` divides `p`.
///
/// Reduces with `x₁² → 1 − x₂²`; the remainder is unique and zero exactly when divisible.
pub fn divisible_by_circle(p: &Polynomial3) -> bool {
    let mut rem = Polynomial3::zero();
    let mut todo: Vec<(Monomial, Rational)> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    while let Some((m, c)) = todo.pop() {
        if m.0[0] >= 2 {
            let lower = Monomial([m.0[0] - 2, m.0[1], m.0[2]]);
            todo.push((lower, c.clone()));
            todo.push((Monomial([m.0[0] - 2, m.0[1] + 2, m.0[2]]), -c));
        } else {
            rem.add_term(m, c);
        }
    }
    rem.is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificates {
    pub div_free: bool,
    pub components_harmonic: bool,
    pub eta_harmonic: bool,
    pub eta_matches_divergence: bool,
    pub r_harmonic: bool,
    pub boundary_match: bool,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.div_free
            && self.components_harmonic
            && self.eta_harmonic
            && self.eta_matches_divergence
            && self.r_harmonic
            && self.boundary_match
    }
}

#[derive(Clone, Debug)]
pub struct CorrectionReport {
    pub input_v: VectorPoly,
    pub q: Polynomial3,
    pub r: Polynomial3,
    pub eta: Polynomial3,
    pub u_tilde: VectorPoly,
    pub certificates: Certificates,
}

fn require_harmonic_components(v: &VectorPoly) -> Result<()> {
    for c in &v.0 {
        let lap = laplacian(c);
        if !lap.is_zero() {
            return Err(Error::NotHarmonicScalar(Box::new(lap)));
        }
    }
    Ok(())
}

/// `ũ = v − η k` with `∂₃η = div v` and `Δη = 0`.
pub fn divergence_correction(v: &VectorPoly) -> Result<CorrectionReport> {
    require_harmonic_components(v)?;
    let d = div(v);
    let f = -&d.deriv(2).at_x3_zero();
    let q = poisson_particular_2d(&f)?;
    let r = dirichlet_harmonic_2d(&q)?;
    let eta = &(&q - &r) + &d.integrate_x3();
    let u_tilde = v - &VectorPoly::along(&eta, &Vec3::unit(2));
    let certificates = Certificates {
        div_free: div(&u_tilde).is_zero(),
        components_harmonic: laplacian_vec(&u_tilde).is_zero(),
        eta_harmonic: laplacian(&eta).is_zero(),
        eta_matches_divergence: eta.deriv(2) == d,
        r_harmonic: laplacian(&r).is_zero(),
        boundary_match: divisible_by_circle(&(&q - &r)),
    };
    Ok(CorrectionReport {
        input_v: v.clone(),
        q,
        r,
        eta,
        u_tilde,
        certificates,
    })
}

/// `{α̃, u}` with `∇α̃ = rot u` and `α̃(0) = alpha0`.
pub fn complete_to_quaternion(u: &VectorPoly, alpha0: &Rational) -> Result<QuaternionPolyField> {
    let d = div(u);
    if !d.is_zero() {
        return Err(Error::InvalidInput(format!("div u = {d}")));
    }
    require_harmonic_components(u)?;
    let w = rot(u);
    let mut alpha = Polynomial3::constant(alpha0.clone());
    for (n, part) in w.homogeneous_parts() {
        alpha += &euler_potential(&part, n)?;
    }
    let p = QuaternionPolyField::new(alpha, u.clone());
    require_harmonic(&p)?;
    Ok(p)
}

#[derive(Clone, Debug)]
pub struct ErrorReport {
    /// Sampled sup of each component of `p − p̃`.
    pub component_sup: [f64; 4],
    /// Sampled sup of the quaternion module `|p − p̃|`.
    pub module_sup: f64,
    pub eta: Polynomial3,
    pub samples: usize,
}

pub fn approximate(
    p: &QuaternionPolyField,
    perturbation: &VectorPoly,
) -> Result<(QuaternionPolyField, ErrorReport)> {
    approximate_on(p, perturbation, &BallGrid::default())
}

pub fn approximate_on(
    p: &QuaternionPolyField,
    perturbation: &VectorPoly,
    grid: &BallGrid,
) -> Result<(QuaternionPolyField, ErrorReport)> {
    require_harmonic(p)?;
    require_harmonic_components(perturbation)?;
    let report = divergence_correction(&(&p.u + perturbation))?;
    let p_tilde = complete_to_quaternion(&report.u_tilde, &p.constant_term())?;
    let diff = p - &p_tilde;
    let mut component_sup = [0.0f64; 4];
    let mut module_sup = 0.0f64;
    for x in grid.points() {
        let v = diff.eval_f64(x);
        for i in 0..4 {
            component_sup[i] = component_sup[i].max(v[i].abs());
        }
        module_sup = module_sup.max(v.iter().map(|c| c * c).sum::<f64>().sqrt());
    }
    Ok((
        p_tilde,
        ErrorReport {
            component_sup,
            module_sup,
            eta: report.eta,
            samples: grid.len(),
        },
    ))
}
