//! Rational scalars and exact 3-vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` as a rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back for values whose numerator or denominator overflow f64 individually.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Canonical `"num/den"` encoding (denominator always written, always positive).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// An exact vector in Q³.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vec3(pub [Rational; 3]);

impl Vec3 {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Vec3([a, b, c])
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Vec3([int(a), int(b), int(c)])
    }

    pub fn zero() -> Self {
        Vec3([Rational::zero(), Rational::zero(), Rational::zero()])
    }

    /// The standard basis vector e_{i+1}.
    pub fn unit(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = Rational::one();
        v
    }

    pub fn dot(&self, other: &Vec3) -> Rational {
        &self.0[0] * &other.0[0] + &self.0[1] * &other.0[1] + &self.0[2] * &other.0[2]
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &other.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn scale(&self, s: &Rational) -> Vec3 {
        Vec3([&self.0[0] * s, &self.0[1] * s, &self.0[2] * s])
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [to_f64(&self.0[0]), to_f64(&self.0[1]), to_f64(&self.0[2])]
    }

    /// Smallest integer vector with the same direction (sign preserved).
    pub fn primitive_integer(&self) -> [BigInt; 3] {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        }
        [&ints[0] / &g, &ints[1] / &g, &ints[2] / &g]
    }

    pub fn is_parallel(&self, other: &Vec3) -> bool {
        self.cross(other).is_zero()
    }

    pub fn abs_max(&self) -> Rational {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl Add for &Vec3 {
    type Output = Vec3;
    fn add(self, o: &Vec3) -> Vec3 {
        Vec3([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }
}

impl Sub for &Vec3 {
    type Output = Vec3;
    fn sub(self, o: &Vec3) -> Vec3 {
        Vec3([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-&self.0[0], -&self.0[1], -&self.0[2]])
    }
}

impl Mul<&Rational> for &Vec3 {
    type Output = Vec3;
    fn mul(self, s: &Rational) -> Vec3 {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&int(3)), "3/1");
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
    }

    #[test]
    fn primitive_vectors() {
        let v = Vec3::new(rat(1, 2), rat(-3, 4), int(0));
        let p = v.primitive_integer();
        assert_eq!(p, [BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }

    #[test]
    fn cross_follows_right_hand_rule() {
        assert_eq!(Vec3::unit(0).cross(&Vec3::unit(1)), Vec3::unit(2));
        assert_eq!(Vec3::unit(2).cross(&Vec3::unit(0)), Vec3::unit(1));
    }
}
