//! Coordinate fields of a frame, linear harmonic fields, and point evaluations
//! recovered from their values on the coordinate fields.

use num_traits::{One, Zero};
use rand::Rng;

use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::calculus::harmonic_defects;
use crate::poly::{
    field_coords, homogeneous_components, is_harmonic_field, monomials_of_degree, Axis, Monomial,
    Polynomial3, QuaternionPolyField, VectorPoly,
};
use crate::quaternion::Quaternion;
use crate::rational::{format_rational, int, Rational, Vec3};
use crate::sampling::BallGrid;
use crate::spaces::{axial_lift, coaxial_mul, in_span, is_axial_harmonic};

/// Orthonormal right-handed rational frame `(ω₁, ω₂, ω₃)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    w: [Vec3; 3],
}

impl Frame {
    pub fn new(w1: Vec3, w2: Vec3, w3: Vec3) -> Result<Self> {
        let w = [w1, w2, w3];
        for k in 0..3 {
            for l in 0..3 {
                let expected = if k == l { int(1) } else { int(0) };
                if w[k].dot(&w[l]) != expected {
                    return Err(Error::InvalidFrame(format!(
                        "w{}·w{} = {}",
                        k + 1,
                        l + 1,
                        format_rational(&w[k].dot(&w[l]))
                    )));
                }
            }
        }
        for k in 0..3 {
            if w[k].cross(&w[(k + 1) % 3]) != w[(k + 2) % 3] {
                return Err(Error::InvalidFrame(format!(
                    "w{} ∧ w{} ≠ w{}",
                    k + 1,
                    (k + 1) % 3 + 1,
                    (k + 2) % 3 + 1
                )));
            }
        }
        Ok(Frame { w })
    }

    pub fn standard() -> Self {
        Frame {
            w: [Vec3::unit(0), Vec3::unit(1), Vec3::unit(2)],
        }
    }

    /// A rotation of the standard frame with rational entries.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let [a, b, c] = crate::random::rotation_rows(rng);
        Frame::new(a, b, c).expect("rotation rows form a frame")
    }

    /// `ω_k` for `k ∈ {0, 1, 2}`.
    pub fn w(&self, k: usize) -> &Vec3 {
        &self.w[k]
    }

    pub fn axis(&self, k: usize) -> Axis {
        Axis::new(self.w[k].clone()).expect("frame vectors are unit")
    }

    /// `𝔬_k = {0, ω_k}`.
    pub fn o(&self, k: usize) -> Quaternion {
        Quaternion::pure(self.w[k].clone())
    }
}

/// `π_k = {x·ω_k, [x·ω_{k+1}] ω_{k+2}}`, indices mod 3.
pub fn coordinate_fields(f: &Frame) -> [QuaternionPolyField; 3] {
    std::array::from_fn(|k| {
        QuaternionPolyField::new(
            Polynomial3::linear_form(f.w(k)),
            VectorPoly::along(&Polynomial3::linear_form(f.w((k + 1) % 3)), f.w((k + 2) % 3)),
        )
    })
}

/// `π₁ = 𝔬₃π₂ − 𝔬₂π₃`, checked as an exact field identity.
pub fn verify_frame_relation(f: &Frame) -> bool {
    let [p1, p2, p3] = coordinate_fields(f);
    &p2.left_mul(&f.o(2)) - &p3.left_mul(&f.o(1)) == p1
}

/// `{a·x, Ax}` with `tr A = 0` and `a = rot(Ax)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearHarmonicField {
    pub a: Vec3,
    /// Rows of `A`.
    pub m: [Vec3; 3],
}

impl LinearHarmonicField {
    pub fn new(a: Vec3, m: [Vec3; 3]) -> Result<Self> {
        let tr = &(&m[0].0[0] + &m[1].0[1]) + &m[2].0[2];
        if !tr.is_zero() {
            return Err(Error::InvalidLinearField(format!("tr A = {}", format_rational(&tr))));
        }
        let curl = Self::curl_of(&m);
        if curl != a {
            return Err(Error::InvalidLinearField(format!("a = {a}, rot(Ax) = {curl}")));
        }
        Ok(LinearHarmonicField { a, m })
    }

    /// The harmonic linear field with vector part `Ax` (requires `tr A = 0`).
    pub fn from_matrix(m: [Vec3; 3]) -> Result<Self> {
        Self::new(Self::curl_of(&m), m)
    }

    fn curl_of(m: &[Vec3; 3]) -> Vec3 {
        let a = |i: usize, j: usize| &m[i].0[j];
        Vec3::new(a(2, 1) - a(1, 2), a(0, 2) - a(2, 0), a(1, 0) - a(0, 1))
    }

    pub fn to_field(&self) -> QuaternionPolyField {
        QuaternionPolyField::new(
            Polynomial3::linear_form(&self.a),
            VectorPoly(std::array::from_fn(|i| Polynomial3::linear_form(&self.m[i]))),
        )
    }

    pub fn from_field(p: &QuaternionPolyField) -> Result<Self> {
        if !p.is_zero() && !p.is_homogeneous_of(1) {
            return Err(Error::InvalidLinearField(format!("not linear: {p}")));
        }
        let read = |c: &Polynomial3| Vec3(std::array::from_fn(|j| c.coeff(&Monomial::var(j))));
        Self::new(read(&p.alpha), std::array::from_fn(|i| read(&p.u.0[i])))
    }
}

/// `π = 𝔤π₂ + 𝔥π₃`, with the rank of the representation system.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearExpansion {
    pub g: Quaternion,
    pub h: Quaternion,
    pub rank: usize,
}

fn expansion_matrix(f: &Frame) -> Matrix {
    let [_, p2, p3] = coordinate_fields(f);
    let monomials = monomials_of_degree(1);
    let cols: Vec<Vec<Rational>> = [&p2, &p3]
        .iter()
        .flat_map(|p| (0..4).map(move |c| p.left_mul(&Quaternion::basis(c))))
        .map(|q| field_coords(&q, &monomials))
        .collect();
    Matrix::from_columns(&cols, 4 * monomials.len())
}

pub fn expand_linear(pi: &LinearHarmonicField, f: &Frame) -> Result<LinearExpansion> {
    let m = expansion_matrix(f);
    let target = field_coords(&pi.to_field(), &monomials_of_degree(1));
    let x = m
        .solve(&target)
        .ok_or_else(|| Error::InvalidLinearField("no representation in π₂, π₃".into()))?;
    Ok(LinearExpansion {
        g: Quaternion::from_components([x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()]),
        h: Quaternion::from_components([x[4].clone(), x[5].clone(), x[6].clone(), x[7].clone()]),
        rank: m.rank(),
    })
}

/// Values `μ(π₁), μ(π₂), μ(π₃)` of a functional in a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalValues {
    pub v: [Quaternion; 3],
}

/// `(a_{k,k+1}, b_{k,k+1})` with `v_k = {a, b ω_{k+2}}`.
fn subalgebra_coords(v: &Quaternion, w: &Vec3) -> Option<(Rational, Rational)> {
    let b = v.vec.dot(w);
    (w.scale(&b) == v.vec).then(|| (v.scalar.clone(), b))
}

/// Recovers `x^μ = a₁₂ω₁ + b₁₂ω₂ + b₂₃ω₃` after checking `a₁₂ = b₃₁`, `b₁₂ = a₂₃`, `b₂₃ = a₃₁`.
pub fn reconstruct_point(vals: &FunctionalValues, f: &Frame) -> Result<Vec3> {
    let mut ab = Vec::with_capacity(3);
    for k in 0..3 {
        let w = f.w((k + 2) % 3);
        ab.push(subalgebra_coords(&vals.v[k], w).ok_or_else(|| {
            Error::InconsistentValues(format!("value {} is not of the form {{a, b·w{}}}", k + 1, (k + 2) % 3 + 1))
        })?);
    }
    let [(a12, b12), (a23, b23), (a31, b31)] = [ab[0].clone(), ab[1].clone(), ab[2].clone()];
    if a12 != b31 {
        return Err(Error::InconsistentValues("a12 ≠ b31".into()));
    }
    if b12 != a23 {
        return Err(Error::InconsistentValues("b12 ≠ a23".into()));
    }
    if b23 != a31 {
        return Err(Error::InconsistentValues("b23 ≠ a31".into()));
    }
    Ok(&(&f.w(0).scale(&a12) + &f.w(1).scale(&b12)) + &f.w(2).scale(&b23))
}

/// Evaluation at a point of the closed unit ball.
#[derive(Clone, Debug, PartialEq)]
pub struct Dirac {
    point: Vec3,
}

impl Dirac {
    pub fn new(x0: Vec3) -> Result<Self> {
        let r = x0.norm_sq();
        if r > int(1) {
            return Err(Error::OutsideBall(format_rational(&r)));
        }
        Ok(Dirac { point: x0 })
    }

    pub fn point(&self) -> &Vec3 {
        &self.point
    }

    pub fn eval(&self, p: &QuaternionPolyField) -> Quaternion {
        p.eval(&self.point)
    }

    pub fn values(&self, f: &Frame) -> FunctionalValues {
        FunctionalValues {
            v: coordinate_fields(f).map(|p| self.eval(&p)),
        }
    }
}

/// `μ(pq) = μ(p)μ(q)` for a coaxial pair.
pub fn multiplicativity_check(
    d: &Dirac,
    p: &QuaternionPolyField,
    q: &QuaternionPolyField,
    w: &Axis,
) -> Result<bool> {
    let pq = coaxial_mul(p, q, w)?;
    Ok(d.eval(&pq) == d.eval(p).mul(&d.eval(q)))
}

/// `{1, 0}` and the harmonic `w`-axial field with scalar part `x·η`.
pub fn generators(w: &Axis, eta: &Axis) -> Result<(QuaternionPolyField, QuaternionPolyField)> {
    if !w.vector().dot(eta.vector()).is_zero() {
        return Err(Error::NotOrthogonal);
    }
    let unit = QuaternionPolyField::constant(&Quaternion::one());
    let gen = axial_lift(&Polynomial3::linear_form(eta.vector()), w)?;
    Ok((unit, gen))
}

/// `g⁰, g¹, …, gⁿ` under the coaxial product.
pub fn axial_powers(g: &QuaternionPolyField, w: &Axis, n: u32) -> Result<Vec<QuaternionPolyField>> {
    let mut out = vec![QuaternionPolyField::constant(&Quaternion::one())];
    for _ in 0..n {
        let next = coaxial_mul(out.last().unwrap(), g, w)?;
        out.push(next);
    }
    Ok(out)
}

/// Some `η ⊥ w`, the cross product with the first basis vector that gives a nonzero result.
pub fn orthogonal_axis(w: &Axis) -> Axis {
    (0..3)
        .find_map(|i| Axis::new(w.vector().cross(&Vec3::unit(i))).ok())
        .expect("a nonzero vector is not parallel to every basis vector")
}

/// Whether `hp` is harmonic.
pub fn h_module_check(h: &Quaternion, p: &QuaternionPolyField) -> bool {
    is_harmonic_field(&p.left_mul(h))
}

#[derive(Clone, Debug)]
pub struct NonClosureWitness {
    pub p: QuaternionPolyField,
    pub q: QuaternionPolyField,
    pub pq: QuaternionPolyField,
    pub gradient_defect: VectorPoly,
    pub divergence: Polynomial3,
    pub product_harmonic: bool,
}

/// `π₁π₂` in the standard frame: both factors harmonic, the product not.
pub fn non_closure_witness() -> NonClosureWitness {
    let [p, q, _] = coordinate_fields(&Frame::standard());
    let pq = p.mul(&q);
    let (gradient_defect, divergence) = harmonic_defects(&pq);
    NonClosureWitness {
        product_harmonic: is_harmonic_field(&pq),
        p,
        q,
        pq,
        gradient_defect,
        divergence,
    }
}

/// The functional determined by its values on the coordinate fields, extended
/// to axial fields through `ℍ`-linearity and multiplicativity.
#[derive(Clone, Debug)]
pub struct ReconstructedFunctional {
    pub frame: Frame,
    pub values: FunctionalValues,
    pub point: Vec3,
}

impl ReconstructedFunctional {
    pub fn new(values: FunctionalValues, frame: Frame) -> Result<Self> {
        let point = reconstruct_point(&values, &frame)?;
        Ok(ReconstructedFunctional {
            frame,
            values,
            point,
        })
    }

    /// `μ(π)` for a linear harmonic field via `π = 𝔤π₂ + 𝔥π₃`.
    pub fn apply_linear(&self, pi: &LinearHarmonicField) -> Result<Quaternion> {
        let e = expand_linear(pi, &self.frame)?;
        Ok(&e.g.mul(&self.values.v[1]) + &e.h.mul(&self.values.v[2]))
    }

    /// `μ(p)` for a harmonic `w`-axial field.
    ///
    /// Each degree-n part is `(a + b𝔴)gⁿ` for the generator `g`, so its value is
    /// `(a + b𝔴)μ(g)ⁿ`.
    pub fn apply_axial(&self, p: &QuaternionPolyField, w: &Axis) -> Result<Quaternion> {
        if !is_axial_harmonic(p, w) {
            return Err(Error::NotAxial(w.to_string()));
        }
        let (_, g) = generators(w, &orthogonal_axis(w))?;
        let mu_g = self.apply_linear(&LinearHarmonicField::from_field(&g)?)?;
        let o = Quaternion::pure(w.vector().clone());
        let mut total = Quaternion::zero();
        for (n, part) in homogeneous_components(p) {
            if n == 0 {
                total = &total + &part.at_origin();
                continue;
            }
            let gn = axial_powers(&g, w, n)?.pop().unwrap();
            let ogn = gn.left_mul(&o);
            let monomials = monomials_of_degree(n);
            let m = Matrix::from_columns(
                &[field_coords(&gn, &monomials), field_coords(&ogn, &monomials)],
                4 * monomials.len(),
            );
            let ab = m
                .solve(&field_coords(&part, &monomials))
                .ok_or_else(|| Error::NotAxial(w.to_string()))?;
            let coef = Quaternion::new(ab[0].clone(), w.vector().scale(&ab[1]));
            let mut pow = Quaternion::one();
            for _ in 0..n {
                pow = pow.mul(&mu_g);
            }
            total = &total + &coef.mul(&pow);
        }
        Ok(total)
    }

    /// Sum of [`Self::apply_axial`] over the parts of a complete decomposition.
    pub fn apply_decomposition(&self, d: &Decomposition) -> Result<Quaternion> {
        if !d.is_complete() {
            return Err(Error::InvalidInput("decomposition has a nonzero residual".into()));
        }
        let mut total = Quaternion::zero();
        for (w, p) in &d.parts {
            total = &total + &self.apply_axial(p, w)?;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub power: u32,
    /// `|gʲ(x₀)|² / |η|^{2j}`, exact.
    pub value_module_sq: Rational,
    /// Sampled `sup_B |gʲ| / |η|ʲ`.
    pub ball_sup: f64,
}

/// Powers of an axial generator through `x₀`: their values at `x₀` grow like
/// `|x₀|ʲ` while their sup over the unit ball stays at 1.
pub fn growth_demonstration(x0: &Vec3, max_power: u32, grid: &BallGrid) -> Result<Vec<GrowthRow>> {
    let eta = Axis::new(x0.clone())?;
    let w = orthogonal_axis(&eta);
    let (_, g) = generators(&w, &eta)?;
    let eta_sq = eta.norm_sq();
    let scale = eta_sq.clone();
    let norm = crate::rational::to_f64(&scale).sqrt();
    let mut rows = Vec::new();
    let mut denom = Rational::one();
    for (j, gj) in axial_powers(&g, &w, max_power)?.iter().enumerate() {
        let value = gj.eval(x0).module_sq() / &denom;
        let nf = norm.powi(j as i32);
        let sup = grid.sup(|x| {
            let v = gj.eval_f64(x);
            v.iter().map(|c| c * c).sum::<f64>().sqrt() / nf
        });
        rows.push(GrowthRow {
            power: j as u32,
            value_module_sq: value,
            ball_sup: sup,
        });
        denom *= &eta_sq;
    }
    Ok(rows)
}

/// Whether `g⁰, …, gⁿ` are linearly independent.
pub fn powers_independent(powers: &[QuaternionPolyField]) -> bool {
    (0..powers.len()).all(|i| !in_span(&powers[..i], &powers[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn x(i: usize) -> Polynomial3 {
        Polynomial3::var(i)
    }

    #[test]
    fn standard_coordinate_fields() {
        let [p1, p2, p3] = coordinate_fields(&Frame::standard());
        assert_eq!(p1, QuaternionPolyField::new(x(0), VectorPoly::new(Polynomial3::zero(), Polynomial3::zero(), x(1))));
        for p in [&p1, &p2, &p3] {
            assert!(is_harmonic_field(p));
        }
        assert!(is_axial_harmonic(&p1, &Axis::e(2)));
        assert!(!is_axial_harmonic(&p1, &Axis::e(0)));
    }

    #[test]
    fn identity_on_frames() {
        assert!(verify_frame_relation(&Frame::standard()));
        let f = Frame::new(
            Vec3::new(rat(3, 5), rat(4, 5), int(0)),
            Vec3::new(rat(-4, 5), rat(3, 5), int(0)),
            Vec3::from_ints(0, 0, 1),
        )
        .unwrap();
        assert!(verify_frame_relation(&f));
        let left = Frame::new(
            Vec3::new(rat(3, 5), rat(4, 5), int(0)),
            Vec3::new(rat(-4, 5), rat(3, 5), int(0)),
            Vec3::from_ints(0, 0, -1),
        );
        assert!(matches!(left, Err(Error::InvalidFrame(_))));
    }

    #[test]
    fn linear_expansions() {
        let f = Frame::standard();
        let [p1, p2, _] = coordinate_fields(&f);
        let e = expand_linear(&LinearHarmonicField::from_field(&p2).unwrap(), &f).unwrap();
        assert_eq!((e.g, e.h), (Quaternion::one(), Quaternion::zero()));
        assert_eq!(e.rank, 8);
        let e = expand_linear(&LinearHarmonicField::from_field(&p1).unwrap(), &f).unwrap();
        assert_eq!((e.g, e.h), (f.o(2), -&f.o(1)));
        assert!(LinearHarmonicField::new(Vec3::zero(), [Vec3::unit(0), Vec3::zero(), Vec3::zero()]).is_err());
    }

    #[test]
    fn reconstruction() {
        let f = Frame::standard();
        let x0 = Vec3::new(rat(1, 2), rat(-1, 3), rat(1, 4));
        let vals = Dirac::new(x0.clone()).unwrap().values(&f);
        assert_eq!(reconstruct_point(&vals, &f).unwrap(), x0);
        let zero = Dirac::new(Vec3::zero()).unwrap().values(&f);
        assert_eq!(reconstruct_point(&zero, &f).unwrap(), Vec3::zero());
        let mut bad = vals.clone();
        bad.v[0].scalar += int(1);
        assert!(matches!(reconstruct_point(&bad, &f), Err(Error::InconsistentValues(_))));
    }

    #[test]
    fn dirac_examples() {
        let [p1, ..] = coordinate_fields(&Frame::standard());
        assert!(Dirac::new(Vec3::zero()).unwrap().eval(&p1).is_zero());
        assert_eq!(Dirac::new(Vec3::unit(0)).unwrap().eval(&p1), Quaternion::one());
        let h = Quaternion::from_components([int(1), int(2), int(3), int(4)]);
        let d = Dirac::new(Vec3::new(rat(1, 3), rat(1, 3), rat(1, 3))).unwrap();
        assert_eq!(d.eval(&QuaternionPolyField::constant(&h)), h);
        assert!(matches!(Dirac::new(Vec3::from_ints(1, 1, 0)), Err(Error::OutsideBall(_))));
    }

    #[test]
    fn generator_examples() {
        let k = Axis::e(2);
        let (unit, g) = generators(&k, &Axis::e(0)).unwrap();
        assert_eq!(g, coordinate_fields(&Frame::standard())[0]);
        assert_eq!(coaxial_mul(&unit, &g, &k).unwrap(), g);
        assert!(powers_independent(&axial_powers(&g, &k, 2).unwrap()));
        assert!(matches!(generators(&k, &Axis::from_ints(1, 0, 1).unwrap()), Err(Error::NotOrthogonal)));
        let d = Dirac::new(Vec3::new(rat(1, 2), rat(1, 3), rat(-1, 5))).unwrap();
        assert!(multiplicativity_check(&d, &g, &g, &k).unwrap());
    }

    #[test]
    fn module_action() {
        let [p1, ..] = coordinate_fields(&Frame::standard());
        let ip = p1.left_mul(&Quaternion::i());
        assert_eq!(ip, QuaternionPolyField::new(Polynomial3::zero(), VectorPoly::new(x(0), -&x(1), Polynomial3::zero())));
        assert!(h_module_check(&Quaternion::i(), &p1));
        assert_eq!(p1.left_mul(&Quaternion::one()), p1);
    }

    #[test]
    fn witness() {
        let w = non_closure_witness();
        assert!(!w.product_harmonic);
        assert_eq!(w.divergence, x(2).scale(&int(2)));
        assert_eq!(w.pq.alpha, &x(0) * &x(1));
        assert_eq!(w.pq.u, VectorPoly::new(&x(0) * &x(2), &x(1) * &x(2), &x(1) * &x(1)));
        assert!(w.gradient_defect.is_zero());
    }

    #[test]
    fn growth_outside_ball() {
        let x0 = Vec3::new(rat(3, 2), int(0), rat(1, 2));
        let rows = growth_demonstration(&x0, 4, &BallGrid::new(200, 3)).unwrap();
        for r in &rows {
            assert_eq!(r.value_module_sq, x0.norm_sq().pow(r.power as i32));
            assert!(r.ball_sup <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn extended_functional_on_axial_field() {
        let f = Frame::standard();
        let x0 = Vec3::new(rat(1, 3), rat(-1, 2), rat(1, 5));
        let d = Dirac::new(x0).unwrap();
        let mu = ReconstructedFunctional::new(d.values(&f), f).unwrap();
        let w = Axis::from_ints(1, 2, 2).unwrap();
        let (_, g) = generators(&w, &orthogonal_axis(&w)).unwrap();
        let p = &axial_powers(&g, &w, 3).unwrap()[3] + &g.left_mul(&Quaternion::pure(Vec3::from_ints(2, 4, 4)));
        assert_eq!(mu.apply_axial(&p, &w).unwrap(), d.eval(&p));
    }
}
