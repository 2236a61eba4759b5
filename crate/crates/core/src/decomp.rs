//! Decomposition of harmonic fields into axial pieces.
//!
//! Scalars are split over the axial subspaces of a family of axes; the
//! scalar-free remainder of a quaternion field is then split over the
//! quaternion axial subspaces, adding seeded axes one at a time when the
//! current family does not reach it.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::calculus::require_harmonic;
use crate::poly::{
    euler_potential, field_coords, homogeneous_components, is_harmonic_field, laplacian,
    monomials_of_degree, rot, Axis, Polynomial3, QuaternionPolyField, VectorPoly,
};
use crate::random::{AxisGenerator, DEFAULT_SEED};
use crate::rational::Rational;
use crate::spaces::{
    axial_lift, basis_axial_scalar, basis_quat_axial, conjugate, detect_axis, is_axial_harmonic,
    Conjugate,
};

/// Pairwise non-collinear axes.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisFamily {
    axes: Vec<Axis>,
}

impl AxisFamily {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        for i in 0..axes.len() {
            for j in i + 1..axes.len() {
                if axes[i].is_collinear(&axes[j]) {
                    return Err(Error::CollinearAxes(i, j));
                }
            }
        }
        Ok(AxisFamily { axes })
    }

    /// `r` primitive integer axes drawn from a seeded generator.
    pub fn generate(r: usize, seed: u64) -> Self {
        let mut gen = AxisGenerator::new(seed);
        let mut axes = Vec::with_capacity(r);
        while axes.len() < r {
            let a = gen.next_avoiding(&axes);
            axes.push(a);
        }
        AxisFamily { axes }
    }

    /// `r` axes with small rational entries.
    pub fn random<R: rand::Rng>(r: usize, rng: &mut R) -> Self {
        let mut axes: Vec<Axis> = Vec::with_capacity(r);
        while axes.len() < r {
            let a = crate::random::axis(rng);
            if axes.iter().all(|b| !b.is_collinear(&a)) {
                axes.push(a);
            }
        }
        AxisFamily { axes }
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    pub fn push(&mut self, w: Axis) -> Result<()> {
        if let Some(i) = self.position_collinear(&w) {
            return Err(Error::CollinearAxes(i, self.axes.len()));
        }
        self.axes.push(w);
        Ok(())
    }

    pub fn position_collinear(&self, w: &Axis) -> Option<usize> {
        self.axes.iter().position(|a| a.is_collinear(w))
    }
}

fn scalar_columns(n: u32, fam: &AxisFamily) -> Result<(Vec<Polynomial3>, Vec<usize>)> {
    let mut elems = Vec::new();
    let mut owner = Vec::new();
    for (k, w) in fam.axes().iter().enumerate() {
        for e in &basis_axial_scalar(n, w)?.elements {
            elems.push(e.clone());
            owner.push(k);
        }
    }
    Ok((elems, owner))
}

fn scalar_matrix(n: u32, elems: &[Polynomial3]) -> Matrix {
    let monomials = monomials_of_degree(n);
    let cols: Vec<Vec<Rational>> = elems.iter().map(|e| e.coords(&monomials)).collect();
    Matrix::from_columns(&cols, monomials.len())
}

/// `dim Σ_k Ṗ_n^{w_k}`.
pub fn span_dimension(n: u32, fam: &AxisFamily) -> Result<usize> {
    let (elems, _) = scalar_columns(n, fam)?;
    Ok(scalar_matrix(n, &elems).rank())
}

/// The unique (up to scale) relation `Σ φ_k = 0` with `φ_k ∈ Ṗ_n^{w_k}`
/// for a family of exactly `n+1` axes.
///
/// Scaled so the lowest graded-lex term of `φ_1` has coefficient 1.
pub fn kernel_relation(n: u32, fam: &AxisFamily) -> Result<Vec<Polynomial3>> {
    if fam.len() != n as usize + 1 {
        return Err(Error::FamilySize {
            expected: n as usize + 1,
            found: fam.len(),
        });
    }
    let (elems, owner) = scalar_columns(n, fam)?;
    let kernel = scalar_matrix(n, &elems).nullspace();
    if kernel.len() != 1 {
        return Err(Error::DegenerateKernel(kernel.len()));
    }
    let mut phis = vec![Polynomial3::zero(); fam.len()];
    for ((e, k), c) in elems.iter().zip(&owner).zip(&kernel[0]) {
        if !c.is_zero() {
            phis[*k] += &e.scale(c);
        }
    }
    if let Some(k) = phis.iter().position(Polynomial3::is_zero) {
        return Err(Error::ZeroRelationComponent(k));
    }
    let lead = phis[0].first_term().map(|(_, c)| c.clone()).expect("nonzero");
    let inv = Rational::one() / lead;
    Ok(phis.iter().map(|p| p.scale(&inv)).collect())
}

/// The scalar-free field `{0, u*}` assembled from the lifts of a kernel relation.
#[derive(Clone, Debug)]
pub struct StarField {
    pub degree: u32,
    pub axes: Vec<Axis>,
    pub relation: Vec<Polynomial3>,
    pub conjugates: Vec<Conjugate>,
    pub lifts: Vec<QuaternionPolyField>,
    pub field: QuaternionPolyField,
}

impl StarField {
    pub fn u(&self) -> &VectorPoly {
        &self.field.u
    }
}

pub fn star_field(n: u32, fam: &AxisFamily) -> Result<StarField> {
    let relation = kernel_relation(n, fam)?;
    let mut conjugates = Vec::new();
    let mut lifts = Vec::new();
    let mut u = VectorPoly::zero();
    for (phi, w) in relation.iter().zip(fam.axes()) {
        let c = conjugate(phi, w)?;
        let s = c.psi_tilde.scale(&(Rational::one() / &c.scale));
        u = &u + &VectorPoly::along(&s, w.vector());
        lifts.push(axial_lift(phi, w)?);
        conjugates.push(c);
    }
    let field = QuaternionPolyField::new(Polynomial3::zero(), u);
    let summed: QuaternionPolyField = lifts.iter().sum();
    if summed != field {
        return Err(Error::Postcondition("lifts do not sum to the star field".into()));
    }
    if field.u.is_zero() {
        return Err(Error::Postcondition("star field vanished".into()));
    }
    if !rot(&field.u).is_zero() {
        return Err(Error::Postcondition("star field is not curl-free".into()));
    }
    require_harmonic(&field)?;
    Ok(StarField {
        degree: n,
        axes: fam.axes().to_vec(),
        relation,
        conjugates,
        lifts,
        field,
    })
}

/// `h` of degree `n+1` with `∇h = u*`; harmonic by construction.
pub fn star_potential(s: &StarField) -> Result<Polynomial3> {
    let h = euler_potential(&s.field.u, s.degree)?;
    let lap = laplacian(&h);
    if !lap.is_zero() {
        return Err(Error::NotHarmonicScalar(Box::new(lap)));
    }
    Ok(h)
}

/// Minimum-norm split of a homogeneous harmonic scalar into axial parts.
///
/// Returns one entry per family axis (possibly zero), in family order.
fn scalar_split(alpha: &Polynomial3, n: u32, fam: &AxisFamily) -> Result<Vec<Polynomial3>> {
    if fam.len() < n as usize + 1 {
        return Err(Error::SpanTooSmall {
            size: fam.len(),
            degree: n,
        });
    }
    let (elems, owner) = scalar_columns(n, fam)?;
    let x = scalar_matrix(n, &elems)
        .solve_min_norm(&alpha.coords(&monomials_of_degree(n)))
        .ok_or_else(|| Error::NotInSpan(alpha.to_string()))?;
    let mut parts = vec![Polynomial3::zero(); fam.len()];
    for ((e, k), c) in elems.iter().zip(&owner).zip(&x) {
        if !c.is_zero() {
            parts[*k] += &e.scale(c);
        }
    }
    Ok(parts)
}

/// Writes a homogeneous harmonic scalar as a sum of axial harmonics, one per axis.
///
/// Zero parts are dropped.
pub fn decompose_scalar(alpha: &Polynomial3, fam: &AxisFamily) -> Result<Vec<(Axis, Polynomial3)>> {
    let Some(n) = alpha.degree() else {
        return Ok(Vec::new());
    };
    if !alpha.is_homogeneous_of(n) {
        return Err(Error::NotHomogeneous { expected: n });
    }
    let lap = laplacian(alpha);
    if !lap.is_zero() {
        return Err(Error::NotHarmonicScalar(Box::new(lap)));
    }
    let parts = scalar_split(alpha, n, fam)?;
    Ok(fam
        .axes()
        .iter()
        .cloned()
        .zip(parts)
        .filter(|(_, p)| !p.is_zero())
        .collect())
}

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    /// Largest working family; defaults to `4n+4` for degree `n`.
    pub axis_cap: Option<usize>,
    /// Seed for axes added beyond the supplied family.
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            axis_cap: None,
            seed: DEFAULT_SEED,
        }
    }
}

/// `target = Σ parts + residual`, each part harmonic and axial about its axis.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub target: QuaternionPolyField,
    pub parts: Vec<(Axis, QuaternionPolyField)>,
    pub residual: QuaternionPolyField,
    /// Size of the largest working family used.
    pub axes_used: usize,
}

impl Decomposition {
    pub fn is_complete(&self) -> bool {
        self.residual.is_zero()
    }

    /// Re-checks the whole certificate exactly.
    pub fn verify(&self) -> bool {
        let sum: QuaternionPolyField = self.parts.iter().map(|(_, p)| p).sum();
        self.is_complete()
            && &sum + &self.residual == self.target
            && self.parts.iter().all(|(w, p)| is_axial_harmonic(p, w))
    }

    fn single(target: &QuaternionPolyField, w: Axis, axes_used: usize) -> Self {
        Decomposition {
            target: target.clone(),
            parts: vec![(w, target.clone())],
            residual: QuaternionPolyField::zero(),
            axes_used,
        }
    }
}

fn merge_part(parts: &mut Vec<(Axis, QuaternionPolyField)>, w: &Axis, p: &QuaternionPolyField) {
    if p.is_zero() {
        return;
    }
    match parts.iter_mut().find(|(a, _)| a.is_collinear(w)) {
        Some((_, q)) => *q = &*q + p,
        None => parts.push((w.clone(), p.clone())),
    }
}

pub fn decompose_quat(p: &QuaternionPolyField, fam: &AxisFamily) -> Result<Decomposition> {
    decompose_quat_with(p, fam, &DecomposeOptions::default())
}

/// Decomposes a homogeneous harmonic field into harmonic axial fields.
pub fn decompose_quat_with(
    p: &QuaternionPolyField,
    fam: &AxisFamily,
    opts: &DecomposeOptions,
) -> Result<Decomposition> {
    require_harmonic(p)?;
    let Some(n) = p.degree() else {
        return Ok(Decomposition {
            target: p.clone(),
            parts: Vec::new(),
            residual: QuaternionPolyField::zero(),
            axes_used: 0,
        });
    };
    if !p.is_homogeneous_of(n) {
        return Err(Error::NotHomogeneous { expected: n });
    }

    // Already axial: keep it whole, reusing a family axis on the same line.
    if let Some(w) = detect_axis(p) {
        let w = fam
            .position_collinear(&w)
            .map(|i| fam.axes()[i].clone())
            .unwrap_or(w);
        return Ok(Decomposition::single(p, w, fam.len()));
    }
    if p.u.is_zero() {
        // Harmonic with u = 0 forces a constant scalar.
        let w = fam.axes().first().cloned().unwrap_or_else(|| Axis::e(2));
        return Ok(Decomposition::single(p, w, fam.len()));
    }

    let cap = opts.axis_cap.unwrap_or(4 * n as usize + 4);
    let mut gen = AxisGenerator::new(opts.seed);
    let mut work = fam.clone();
    while work.len() < n as usize + 1 {
        let a = gen.next_avoiding(work.axes());
        work.push(a)?;
    }

    let mut scalar_parts = Vec::new();
    for (w, phi) in work.axes().iter().zip(scalar_split(&p.alpha, n, &work)?) {
        if !phi.is_zero() {
            scalar_parts.push((w.clone(), axial_lift(&phi, w)?));
        }
    }
    let lifted: QuaternionPolyField = scalar_parts.iter().map(|(_, q)| q).sum();
    let p0 = p - &lifted;

    let monomials = monomials_of_degree(n);
    let target = field_coords(&p0, &monomials);
    let mut columns: Vec<(usize, QuaternionPolyField)> = Vec::new();
    let mut counted = 0;
    let coeffs = loop {
        for (k, w) in work.axes().iter().enumerate().skip(counted) {
            for e in &basis_quat_axial(n, w)?.elements {
                columns.push((k, e.clone()));
            }
        }
        counted = work.len();
        let cols: Vec<Vec<Rational>> = columns
            .iter()
            .map(|(_, e)| field_coords(e, &monomials))
            .collect();
        let a = Matrix::from_columns(&cols, target.len());
        if a.solve(&target).is_some() {
            break a
                .solve_min_norm(&target)
                .expect("consistent system has a min-norm solution");
        }
        if work.len() >= cap {
            return Err(Error::AxisCapReached {
                cap,
                residual: Box::new(p0),
            });
        }
        let a = gen.next_avoiding(work.axes());
        work.push(a)?;
    };

    let mut parts = Vec::new();
    for (w, q) in &scalar_parts {
        merge_part(&mut parts, w, q);
    }
    for ((k, e), c) in columns.iter().zip(&coeffs) {
        if !c.is_zero() {
            merge_part(&mut parts, &work.axes()[*k], &e.scale(c));
        }
    }
    parts.retain(|(_, q)| !q.is_zero());
    let sum: QuaternionPolyField = parts.iter().map(|(_, q)| q).sum();
    Ok(Decomposition {
        target: p.clone(),
        residual: p - &sum,
        parts,
        axes_used: work.len(),
    })
}

/// Decomposes an arbitrary harmonic field degree by degree, merging parts on the same line.
pub fn decompose_full(
    p: &QuaternionPolyField,
    fam: &AxisFamily,
    opts: &DecomposeOptions,
) -> Result<Decomposition> {
    require_harmonic(p)?;
    let mut parts = Vec::new();
    let mut axes_used = 0;
    for (_, comp) in homogeneous_components(p) {
        let d = decompose_quat_with(&comp, fam, opts)?;
        axes_used = axes_used.max(d.axes_used);
        for (w, q) in &d.parts {
            merge_part(&mut parts, w, q);
        }
    }
    parts.retain(|(_, q)| !q.is_zero());
    let sum: QuaternionPolyField = parts.iter().map(|(_, q)| q).sum();
    debug_assert!(parts.iter().all(|(_, q)| is_harmonic_field(q)));
    Ok(Decomposition {
        target: p.clone(),
        residual: p - &sum,
        parts,
        axes_used,
    })
}
