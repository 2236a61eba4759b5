//! Seeded generators for axes, points and harmonic polynomial data.
//!
//! Everything here is driven by a `ChaCha8Rng`, so a seed reproduces the
//! same rational data on every platform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::poly::{Axis, Polynomial3, QuaternionPolyField, VectorPoly};
use crate::rational::{int, rat, Rational, Vec3};
use crate::spaces::{basis_harmonic_scalar, basis_quat_harmonic};

pub const DEFAULT_SEED: u64 = 0x5eed_2018;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `num/den` with `|num| ≤ num_bound`, `1 ≤ den ≤ den_bound`.
pub fn rational<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rational {
    rat(rng.gen_range(-num_bound..=num_bound), rng.gen_range(1..=den_bound))
}

pub fn vector<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Vec3 {
    Vec3(std::array::from_fn(|_| rational(rng, num_bound, den_bound)))
}

/// A nonzero axis with small rational entries.
pub fn axis<R: Rng>(rng: &mut R) -> Axis {
    loop {
        if let Ok(a) = Axis::new(vector(rng, 6, 4)) {
            return a;
        }
    }
}

/// Produces primitive integer directions, skipping any line already present.
#[derive(Clone, Debug)]
pub struct AxisGenerator {
    rng: ChaCha8Rng,
    bound: i64,
}

impl AxisGenerator {
    pub fn new(seed: u64) -> Self {
        AxisGenerator {
            rng: rng(seed),
            bound: 9,
        }
    }

    pub fn next_primitive(&mut self) -> Axis {
        loop {
            let c: [i64; 3] = std::array::from_fn(|_| self.rng.gen_range(-self.bound..=self.bound));
            let g = c.iter().fold(0i64, |acc, x| acc.gcd(x));
            if g == 1 {
                return Axis::from_ints(c[0], c[1], c[2]).expect("gcd 1 implies nonzero");
            }
        }
    }

    pub fn next_avoiding(&mut self, existing: &[Axis]) -> Axis {
        loop {
            let a = self.next_primitive();
            if existing.iter().all(|e| !e.is_collinear(&a)) {
                return a;
            }
        }
    }
}

/// A rational point with `|x|² ≤ 1`.
pub fn point_in_ball<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let p = vector(rng, 12, 12);
        if p.norm_sq() <= int(1) {
            return p;
        }
    }
}

/// A random element of Ṗ_n with small integer coordinates in the cached basis.
pub fn harmonic_scalar<R: Rng>(rng: &mut R, n: u32) -> Result<Polynomial3> {
    let basis = basis_harmonic_scalar(n)?;
    let mut out = Polynomial3::zero();
    for e in &basis.elements {
        out += &e.scale(&int(rng.gen_range(-5..=5)));
    }
    Ok(out)
}

/// A random harmonic (not necessarily homogeneous) polynomial of degree ≤ `max_degree`.
pub fn harmonic_polynomial<R: Rng>(rng: &mut R, max_degree: u32) -> Result<Polynomial3> {
    let mut out = Polynomial3::zero();
    for n in 0..=max_degree {
        out += &harmonic_scalar(rng, n)?;
    }
    Ok(out)
}

/// Componentwise harmonic vector field of degree ≤ `max_degree`.
pub fn harmonic_vector<R: Rng>(rng: &mut R, max_degree: u32) -> Result<VectorPoly> {
    Ok(VectorPoly([
        harmonic_polynomial(rng, max_degree)?,
        harmonic_polynomial(rng, max_degree)?,
        harmonic_polynomial(rng, max_degree)?,
    ]))
}

/// A random element of 𝒫̇_n.
pub fn quat_harmonic<R: Rng>(rng: &mut R, n: u32) -> Result<QuaternionPolyField> {
    let basis = basis_quat_harmonic(n)?;
    Ok(basis
        .elements
        .iter()
        .map(|e| e.scale(&int(rng.gen_range(-4..=4))))
        .sum())
}

/// Unit quaternion-free rotation from an integer quadruple `(a, b, c, d)`:
/// the rows of `R/(a²+b²+c²+d²)` are an orthonormal right-handed triple.
pub fn pythagorean_rotation(a: i64, b: i64, c: i64, d: i64) -> Option<[Vec3; 3]> {
    let n = a * a + b * b + c * c + d * d;
    if n == 0 {
        return None;
    }
    let s = |v: i64| Rational::new(BigInt::from(v), BigInt::from(n));
    Some([
        Vec3::new(
            s(a * a + b * b - c * c - d * d),
            s(2 * (b * c - a * d)),
            s(2 * (b * d + a * c)),
        ),
        Vec3::new(
            s(2 * (b * c + a * d)),
            s(a * a - b * b + c * c - d * d),
            s(2 * (c * d - a * b)),
        ),
        Vec3::new(
            s(2 * (b * d - a * c)),
            s(2 * (c * d + a * b)),
            s(a * a - b * b - c * c + d * d),
        ),
    ])
}

pub fn rotation_rows<R: Rng>(rng: &mut R) -> [Vec3; 3] {
    loop {
        let q: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-6..=6));
        if let Some(rows) = pythagorean_rotation(q[0], q[1], q[2], q[3]) {
            if !rows.iter().any(|r| r.0.iter().all(Zero::is_zero)) {
                return rows;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_deterministic_and_noncollinear() {
        let mut a = AxisGenerator::new(7);
        let mut b = AxisGenerator::new(7);
        let mut fam: Vec<Axis> = Vec::new();
        for _ in 0..20 {
            let x = a.next_avoiding(&fam);
            assert_eq!(x, b.next_avoiding(&fam));
            assert!(fam.iter().all(|f| !f.is_collinear(&x)));
            fam.push(x);
        }
    }

    #[test]
    fn rotation_rows_are_orthonormal() {
        let mut r = rng(3);
        for _ in 0..10 {
            let [w1, w2, w3] = rotation_rows(&mut r);
            assert_eq!(w1.norm_sq(), int(1));
            assert_eq!(w1.dot(&w2), int(0));
            assert_eq!(w1.cross(&w2), w3);
        }
    }

    #[test]
    fn points_stay_in_ball() {
        let mut r = rng(11);
        for _ in 0..50 {
            assert!(point_in_ball(&mut r).norm_sq() <= int(1));
        }
    }
}
