//! Exact quaternions.
//!
//! [`Quaternion`] is the geometric form `{α, u}` (scalar plus 3-vector) with
//! the product `{αβ − u·v, αv + βu + u∧v}`. [`Hamilton`] is the coordinate
//! form `α + u₁i + u₂j + u₃k` multiplied through the basis table. Both carry
//! the same four rationals; [`embed`] and [`Quaternion::to_hamilton`] switch
//! between the two views.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{Rational, Vec3};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub scalar: Rational,
    pub vec: Vec3,
}

impl Quaternion {
    pub fn new(scalar: Rational, vec: Vec3) -> Self {
        Quaternion { scalar, vec }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Vec3::zero())
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), Vec3::zero())
    }

    pub fn scalar(a: Rational) -> Self {
        Self::new(a, Vec3::zero())
    }

    /// The pure quaternion `{0, v}`.
    pub fn pure(v: Vec3) -> Self {
        Self::new(Rational::zero(), v)
    }

    /// Basis element 1, i, j, k for `idx` = 0..4.
    pub fn basis(idx: usize) -> Self {
        match idx {
            0 => Self::one(),
            1..=3 => Self::pure(Vec3::unit(idx - 1)),
            _ => panic!("quaternion basis index {idx} out of range"),
        }
    }

    pub fn i() -> Self {
        Self::basis(1)
    }

    pub fn j() -> Self {
        Self::basis(2)
    }

    pub fn k() -> Self {
        Self::basis(3)
    }

    /// Geometric-quaternion product `{αβ − u·v, αv + βu + u∧v}`.
    pub fn mul(&self, other: &Quaternion) -> Quaternion {
        let scalar = &self.scalar * &other.scalar - self.vec.dot(&other.vec);
        let vec = &(&other.vec.scale(&self.scalar) + &self.vec.scale(&other.scalar))
            + &self.vec.cross(&other.vec);
        Quaternion { scalar, vec }
    }

    /// `|q|² = α² + |u|²`.
    pub fn module_sq(&self) -> Rational {
        &self.scalar * &self.scalar + self.vec.norm_sq()
    }

    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.scalar.clone(), -&self.vec)
    }

    pub fn scale(&self, s: &Rational) -> Quaternion {
        Quaternion::new(&self.scalar * s, self.vec.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.vec.is_zero()
    }

    pub fn components(&self) -> [Rational; 4] {
        [
            self.scalar.clone(),
            self.vec.0[0].clone(),
            self.vec.0[1].clone(),
            self.vec.0[2].clone(),
        ]
    }

    pub fn from_components(c: [Rational; 4]) -> Self {
        let [a, b, c2, d] = c;
        Quaternion::new(a, Vec3::new(b, c2, d))
    }

    pub fn to_hamilton(&self) -> Hamilton {
        Hamilton(self.components())
    }

    pub fn to_f64(&self) -> [f64; 4] {
        let v = self.vec.to_f64();
        [crate::rational::to_f64(&self.scalar), v[0], v[1], v[2]]
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.scalar, self.vec)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, o: &Quaternion) -> Quaternion {
        Quaternion::mul(self, o)
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.scalar + &o.scalar, &self.vec + &o.vec)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.scalar - &o.scalar, &self.vec - &o.vec)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.scalar, -&self.vec)
    }
}

/// Coordinates `[α, u₁, u₂, u₃]` of `α + u₁i + u₂j + u₃k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hamilton(pub [Rational; 4]);

// BASIS_TABLE[a][b] = (sign, index) with e_a e_b = sign * e_index over (1, i, j, k).
const BASIS_TABLE: [[(i8, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
];

impl Hamilton {
    pub fn basis(idx: usize) -> Self {
        let mut c: [Rational; 4] = Default::default();
        c[idx] = Rational::one();
        Hamilton(c)
    }

    /// Product extended from the basis table by bilinearity.
    pub fn mul(&self, other: &Hamilton) -> Hamilton {
        let mut out: [Rational; 4] = Default::default();
        for (a, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.0.iter().enumerate() {
                let (sign, idx) = BASIS_TABLE[a][b];
                let term = x * y;
                if sign > 0 {
                    out[idx] += term;
                } else {
                    out[idx] -= term;
                }
            }
        }
        Hamilton(out)
    }

    pub fn module_sq(&self) -> Rational {
        self.0.iter().map(|c| c * c).sum()
    }
}

/// The correspondence `α + u₁i + u₂j + u₃k ↦ {α, (u₁, u₂, u₃)}`.
pub fn embed(h: &Hamilton) -> Quaternion {
    Quaternion::from_components(h.0.clone())
}
