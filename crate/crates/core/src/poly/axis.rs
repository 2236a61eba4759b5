use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{Rational, Vec3};

/// A direction in R³ stored as an unnormalized nonzero rational vector.
///
/// Axiality only depends on the line spanned by the vector, so no
/// normalization to the unit sphere is ever performed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Axis(Vec3);

impl Axis {
    pub fn new(v: Vec3) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroAxis);
        }
        Ok(Axis(v))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(Vec3::from_ints(a, b, c))
    }

    pub fn e(i: usize) -> Self {
        Axis(Vec3::unit(i))
    }

    pub fn vector(&self) -> &Vec3 {
        &self.0
    }

    /// `w · w`.
    pub fn norm_sq(&self) -> Rational {
        self.0.norm_sq()
    }

    /// Proportional with a positive factor.
    pub fn is_equivalent(&self, other: &Axis) -> bool {
        self.0.is_parallel(&other.0) && self.0.dot(&other.0).is_positive()
    }

    /// Proportional with either sign (the same line).
    pub fn is_collinear(&self, other: &Axis) -> bool {
        self.0.is_parallel(&other.0)
    }

    /// Primitive integer direction of the line, sign fixed so the first nonzero entry is positive.
    pub fn line_key(&self) -> [BigInt; 3] {
        let mut p = self.0.primitive_integer();
        if let Some(first) = p.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                p = p.map(|c| -c);
            }
        }
        p
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn zero_axis_rejected() {
        assert!(matches!(Axis::new(Vec3::zero()), Err(Error::ZeroAxis)));
    }

    #[test]
    fn equivalence_and_collinearity() {
        let a = Axis::from_ints(1, 2, 2).unwrap();
        let b = Axis::new(Vec3::new(rat(1, 2), rat(1, 1), rat(1, 1))).unwrap();
        let c = Axis::from_ints(-2, -4, -4).unwrap();
        assert!(a.is_equivalent(&b));
        assert!(!a.is_equivalent(&c));
        assert!(a.is_collinear(&c));
        assert_eq!(a.line_key(), c.line_key());
        assert!(!a.is_collinear(&Axis::e(0)));
    }
}
