use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::rational::{int, to_f64, Rational, Vec3};

/// Exponent triple `(r₁, r₂, r₃)` of `x₁^r₁ x₂^r₂ x₃^r₃`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// array compared component by component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `n`, ascending in graded-lex order.
pub fn monomials_of_degree(n: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((n + 1) * (n + 2) / 2) as usize);
    for a in 0..=n {
        for b in 0..=(n - a) {
            out.push(Monomial([a, b, n - a - b]));
        }
    }
    out.sort();
    out
}

/// Exact polynomial in x₁, x₂, x₃ with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial3 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial3 { terms }
    }

    /// The coordinate `x_{i+1}`.
    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), Rational::one())
    }

    /// Convenience constructor from `(coefficient, [r1, r2, r3])` pairs with integer coefficients.
    pub fn from_int_terms(terms: &[(i64, [u32; 3])]) -> Self {
        Self::from_terms(terms.iter().map(|(c, e)| (Monomial(*e), int(*c))))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// The linear form `x · w`.
    pub fn linear_form(w: &Vec3) -> Self {
        Self::from_terms((0..3).map(|i| (Monomial::var(i), w.0[i].clone())))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest-order term in graded-lex order.
    pub fn first_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    /// True when every term has total degree `n` (the zero polynomial qualifies).
    pub fn is_homogeneous_of(&self, n: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == n)
    }

    pub fn homogeneous_part(&self, n: u32) -> Polynomial3 {
        Polynomial3 {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Polynomial3> {
        let mut out: BTreeMap<u32, Polynomial3> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_default()
                .terms
                .insert(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Polynomial3 {
        if s.is_zero() {
            return Self::zero();
        }
        Polynomial3 {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    /// ∂/∂x_{i+1}.
    pub fn deriv(&self, i: usize) -> Polynomial3 {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let r = m.0[i];
            if r == 0 {
                continue;
            }
            let mut e = m.0;
            e[i] -= 1;
            out.add_term(Monomial(e), c * int(r as i64));
        }
        out
    }

    /// Antiderivative in x₃ vanishing on x₃ = 0.
    pub fn integrate_x3(&self) -> Polynomial3 {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut e = m.0;
            e[2] += 1;
            out.add_term(Monomial(e), c / int(e[2] as i64));
        }
        out
    }

    /// Restriction to the plane x₃ = 0.
    pub fn at_x3_zero(&self) -> Polynomial3 {
        Polynomial3 {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[2] == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// True when the polynomial does not involve x₃.
    pub fn is_planar(&self) -> bool {
        self.terms.keys().all(|m| m.0[2] == 0)
    }

    pub fn eval(&self, x: &Vec3) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..m.0[i] {
                    t *= &x.0[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                to_f64(c)
                    * x[0].powi(m.0[0] as i32)
                    * x[1].powi(m.0[1] as i32)
                    * x[2].powi(m.0[2] as i32)
            })
            .sum()
    }

    pub fn pow(&self, n: u32) -> Polynomial3 {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Coefficients on the given monomial list (terms outside the list are dropped).
    pub fn coords(&self, monomials: &[Monomial]) -> Vec<Rational> {
        monomials.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coords(monomials: &[Monomial], coords: &[Rational]) -> Polynomial3 {
        Self::from_terms(monomials.iter().copied().zip(coords.iter().cloned()))
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &r) in m.0.iter().enumerate() {
        match r {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, r)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest-degree terms first reads more naturally.
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = fmt_monomial(m);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&Polynomial3> for Polynomial3 {
    fn add_assign(&mut self, o: &Polynomial3) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Polynomial3> for Polynomial3 {
    fn sub_assign(&mut self, o: &Polynomial3) {
        for (m, c) in &o.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &Polynomial3 {
    type Output = Polynomial3;
    fn add(self, o: &Polynomial3) -> Polynomial3 {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Sub for &Polynomial3 {
    type Output = Polynomial3;
    fn sub(self, o: &Polynomial3) -> Polynomial3 {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Neg for &Polynomial3 {
    type Output = Polynomial3;
    fn neg(self) -> Polynomial3 {
        Polynomial3 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Polynomial3 {
    type Output = Polynomial3;
    fn mul(self, o: &Polynomial3) -> Polynomial3 {
        let mut out = Polynomial3::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial3 {
            type Output = Polynomial3;
            fn $method(self, o: Polynomial3) -> Polynomial3 {
                (&self).$method(&o)
            }
        }
        impl $tr<&Polynomial3> for Polynomial3 {
            type Output = Polynomial3;
            fn $method(self, o: &Polynomial3) -> Polynomial3 {
                (&self).$method(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial3 {
    type Output = Polynomial3;
    fn neg(self) -> Polynomial3 {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn monomial_order_is_graded() {
        let ms = monomials_of_degree(2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert!(Monomial([0, 0, 1]) > Monomial([0, 0, 0]));
        assert!(Monomial([0, 0, 2]) > Monomial([1, 0, 0]));
    }

    #[test]
    fn cancellation_keeps_canonical_form() {
        let p = Polynomial3::var(0) + Polynomial3::var(1);
        let q = &p - &Polynomial3::var(1);
        assert_eq!(q, Polynomial3::var(0));
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).num_terms(), 0);
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(Polynomial3::one().integrate_x3(), Polynomial3::var(2));
        let x3sq = Polynomial3::from_int_terms(&[(1, [0, 0, 2])]);
        assert_eq!(
            x3sq.integrate_x3(),
            Polynomial3::term(Monomial([0, 0, 3]), rat(1, 3))
        );
        let two_x1x3 = Polynomial3::from_int_terms(&[(2, [1, 0, 1])]);
        assert_eq!(
            two_x1x3.integrate_x3(),
            Polynomial3::from_int_terms(&[(1, [1, 0, 2])])
        );
    }

    #[test]
    fn display_reads_naturally() {
        let p = Polynomial3::from_int_terms(&[(1, [2, 0, 0]), (-1, [0, 2, 0]), (3, [0, 0, 0])]);
        assert_eq!(p.to_string(), "x1^2 - x2^2 + 3");
    }

    #[test]
    fn eval_matches_f64() {
        let p = Polynomial3::from_int_terms(&[(2, [1, 1, 0]), (-3, [0, 0, 2])]);
        let x = Vec3::new(rat(1, 2), rat(-1, 3), rat(1, 4));
        let exact = p.eval(&x);
        assert_eq!(exact, rat(-1, 3) - rat(3, 16));
        assert!((p.eval_f64(x.to_f64()) - to_f64(&exact)).abs() < 1e-14);
    }
}
