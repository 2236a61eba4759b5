//! Floating-point oracle checks.
//!
//! The oracle here is independent of the library: quaternion products use the
//! Hamilton component formula, derivatives are central differences of the
//! library's `f64` evaluation, and no exact calculus from the crate is used.

use hqf_core::characters::{coordinate_fields, reconstruct_point, Dirac, Frame, non_closure_witness};
use hqf_core::decomp::{star_field, AxisFamily};
use hqf_core::density::{dirichlet_harmonic_2d, divergence_correction, poisson_particular_2d};
use hqf_core::poly::{Axis, Polynomial3, QuaternionPolyField, VectorPoly};
use hqf_core::quaternion::Quaternion;
use hqf_core::rational::{rat, Vec3};
use hqf_core::spaces::{axial_lift, basis_quat_harmonic, conjugate};

const H: f64 = 1e-4;
const TOL: f64 = 1e-6;

fn hamilton(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn shift(x: [f64; 3], i: usize, h: f64) -> [f64; 3] {
    let mut y = x;
    y[i] += h;
    y
}

fn d(f: &dyn Fn([f64; 3]) -> f64, x: [f64; 3], i: usize) -> f64 {
    (f(shift(x, i, H)) - f(shift(x, i, -H))) / (2.0 * H)
}

fn d2(f: &dyn Fn([f64; 3]) -> f64, x: [f64; 3], i: usize) -> f64 {
    (f(shift(x, i, H)) - 2.0 * f(x) + f(shift(x, i, -H))) / (H * H)
}

fn sample_points() -> Vec<[f64; 3]> {
    vec![
        [0.3, -0.2, 0.5],
        [-0.7, 0.1, 0.2],
        [0.05, 0.6, -0.4],
        [0.4, 0.4, 0.4],
    ]
}

/// Residuals of `∇α = rot u`, `div u = 0` by central differences.
fn harmonic_residual(p: &QuaternionPolyField, x: [f64; 3]) -> f64 {
    let a = |y: [f64; 3]| p.alpha.eval_f64(y);
    let u = |k: usize| move |y: [f64; 3]| p.u.0[k].eval_f64(y);
    let rot = [
        d(&u(2), x, 1) - d(&u(1), x, 2),
        d(&u(0), x, 2) - d(&u(2), x, 0),
        d(&u(1), x, 0) - d(&u(0), x, 1),
    ];
    let div: f64 = (0..3).map(|k| d(&u(k), x, k)).sum();
    let g: f64 = (0..3).map(|i| (d(&a, x, i) - rot[i]).abs()).sum();
    g + div.abs()
}

fn scale_tol(p: &QuaternionPolyField) -> f64 {
    let m = p
        .components()
        .iter()
        .flat_map(|c| c.terms().map(|(_, v)| hqf_core::rational::to_f64(v).abs()).collect::<Vec<_>>())
        .fold(1.0, f64::max);
    TOL * m * 10.0
}

#[test]
fn product_matches_hamilton_table() {
    let qs = [
        Quaternion::from_components([rat(1, 2), rat(-3, 1), rat(2, 5), rat(7, 3)]),
        Quaternion::from_components([rat(0, 1), rat(1, 1), rat(-1, 4), rat(5, 2)]),
        Quaternion::from_components([rat(2, 1), rat(0, 1), rat(0, 1), rat(-1, 1)]),
    ];
    for a in &qs {
        for b in &qs {
            let got = a.mul(b).to_f64();
            let want = hamilton(a.to_f64(), b.to_f64());
            for i in 0..4 {
                assert!((got[i] - want[i]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn quaternion_basis_is_harmonic_numerically() {
    for n in 1..=3 {
        for p in &basis_quat_harmonic(n).unwrap().elements {
            for x in sample_points() {
                assert!(harmonic_residual(p, x) < scale_tol(p), "n={n} {p}");
            }
        }
    }
}

#[test]
fn conjugate_gradient_numerically() {
    let w = Axis::from_ints(1, 2, -2).unwrap();
    let (_, g) = hqf_core::characters::generators(&w, &Axis::from_ints(2, 1, 2).unwrap()).unwrap();
    let phi = g.mul(&g).alpha;
    let c = conjugate(&phi, &w).unwrap();
    let wf = w.vector().to_f64();
    for x in sample_points() {
        let gp: Vec<f64> = (0..3).map(|i| d(&|y| phi.eval_f64(y), x, i)).collect();
        let cross = [
            wf[1] * gp[2] - wf[2] * gp[1],
            wf[2] * gp[0] - wf[0] * gp[2],
            wf[0] * gp[1] - wf[1] * gp[0],
        ];
        for i in 0..3 {
            let gi = d(&|y| c.psi_tilde.eval_f64(y), x, i);
            assert!((gi - cross[i]).abs() < 1e-5);
        }
    }
    let lift = axial_lift(&phi, &w).unwrap();
    for x in sample_points() {
        assert!(harmonic_residual(&lift, x) < 1e-5);
    }
}

#[test]
fn star_field_is_curl_free_numerically() {
    for n in 1..=3u32 {
        let fam = AxisFamily::generate(n as usize + 1, 42);
        let s = star_field(n, &fam).unwrap();
        let u = |k: usize| {
            let c = s.field.u.0[k].clone();
            move |y: [f64; 3]| c.eval_f64(y)
        };
        for x in sample_points() {
            let rot = [
                d(&u(2), x, 1) - d(&u(1), x, 2),
                d(&u(0), x, 2) - d(&u(2), x, 0),
                d(&u(1), x, 0) - d(&u(0), x, 1),
            ];
            let mag: f64 = (0..3).map(|k| u(k)(x).abs()).sum();
            assert!(rot.iter().all(|r| r.abs() < 1e-5 * (1.0 + mag)), "n={n}");
        }
    }
}

#[test]
fn poisson_solution_numerically() {
    let f = Polynomial3::from_int_terms(&[(2, [2, 1, 0]), (-1, [0, 3, 0]), (4, [0, 0, 0])]);
    let q = poisson_particular_2d(&f).unwrap();
    for x in sample_points() {
        let x = [x[0], x[1], 0.0];
        let lap = d2(&|y| q.eval_f64(y), x, 0) + d2(&|y| q.eval_f64(y), x, 1);
        assert!((lap - f.eval_f64(x)).abs() < 1e-4);
    }
}

#[test]
fn dirichlet_solution_on_circle() {
    let q = Polynomial3::from_int_terms(&[(3, [3, 1, 0]), (-2, [0, 4, 0]), (1, [1, 0, 0]), (5, [0, 0, 0])]);
    let r = dirichlet_harmonic_2d(&q).unwrap();
    for k in 0..36 {
        let t = k as f64 * std::f64::consts::PI / 18.0;
        let x = [t.cos(), t.sin(), 0.0];
        assert!((q.eval_f64(x) - r.eval_f64(x)).abs() < 1e-9);
    }
    for x in sample_points() {
        let x = [x[0], x[1], 0.0];
        let lap = d2(&|y| r.eval_f64(y), x, 0) + d2(&|y| r.eval_f64(y), x, 1);
        assert!(lap.abs() < 1e-4);
    }
    // x₁² on the circle is (1 + cos 2t)/2.
    let x1sq = Polynomial3::from_int_terms(&[(1, [2, 0, 0])]);
    let r = dirichlet_harmonic_2d(&x1sq).unwrap();
    for x in sample_points() {
        let want = 0.5 * (1.0 + x[0] * x[0] - x[1] * x[1]);
        assert!((r.eval_f64(x) - want).abs() < 1e-12);
    }
}

#[test]
fn corrected_field_is_divergence_free_numerically() {
    let v = VectorPoly::new(
        Polynomial3::from_int_terms(&[(1, [2, 0, 0]), (-1, [0, 0, 2]), (3, [0, 1, 1])]),
        Polynomial3::from_int_terms(&[(2, [1, 1, 0]), (1, [0, 0, 1])]),
        Polynomial3::from_int_terms(&[(1, [1, 0, 1]), (-1, [0, 1, 0])]),
    );
    let rep = divergence_correction(&v).unwrap();
    for x in sample_points() {
        let div: f64 = (0..3).map(|k| d(&|y| rep.u_tilde.0[k].eval_f64(y), x, k)).sum();
        assert!(div.abs() < 1e-5);
        let eta3 = d(&|y| rep.eta.eval_f64(y), x, 2);
        let divv: f64 = (0..3).map(|k| d(&|y| v.0[k].eval_f64(y), x, k)).sum();
        assert!((eta3 - divv).abs() < 1e-5);
    }
}

#[test]
fn frame_relation_pointwise() {
    let f = Frame::new(
        Vec3::new(rat(3, 5), rat(4, 5), rat(0, 1)),
        Vec3::new(rat(-4, 5), rat(3, 5), rat(0, 1)),
        Vec3::new(rat(0, 1), rat(0, 1), rat(1, 1)),
    )
    .unwrap();
    let [p1, p2, p3] = coordinate_fields(&f);
    let o = |k: usize| {
        let w = f.w(k).to_f64();
        [0.0, w[0], w[1], w[2]]
    };
    for x in sample_points() {
        let a = hamilton(o(2), p2.eval_f64(x));
        let b = hamilton(o(1), p3.eval_f64(x));
        let want = p1.eval_f64(x);
        for i in 0..4 {
            assert!((a[i] - b[i] - want[i]).abs() < 1e-12);
        }
    }
}

#[test]
fn module_action_example_pointwise() {
    let [p1, ..] = coordinate_fields(&Frame::standard());
    let ip = p1.left_mul(&Quaternion::i());
    for x in sample_points() {
        let want = hamilton([0.0, 1.0, 0.0, 0.0], p1.eval_f64(x));
        let got = ip.eval_f64(x);
        for i in 0..4 {
            assert!((got[i] - want[i]).abs() < 1e-12);
        }
        assert!((got[1] - x[0]).abs() < 1e-12 && (got[2] + x[1]).abs() < 1e-12);
    }
}

#[test]
fn witness_divergence_numerically() {
    let w = non_closure_witness();
    let [p1, p2, _] = coordinate_fields(&Frame::standard());
    for x in sample_points() {
        let prod = hamilton(p1.eval_f64(x), p2.eval_f64(x));
        let got = w.pq.eval_f64(x);
        for i in 0..4 {
            assert!((got[i] - prod[i]).abs() < 1e-12);
        }
        let div: f64 = (0..3).map(|k| d(&|y| w.pq.u.0[k].eval_f64(y), x, k)).sum();
        assert!((div - 2.0 * x[2]).abs() < 1e-6);
        assert!(harmonic_residual(&w.pq, x) > 1e-3 || x[2].abs() < 1e-9);
    }
}

#[test]
fn reconstruction_example() {
    let x0 = Vec3::new(rat(1, 2), rat(-1, 3), rat(1, 4));
    let f = Frame::standard();
    let vals = Dirac::new(x0.clone()).unwrap().values(&f);
    let xf = x0.to_f64();
    // μ(π₁) = {x₁, x₂ k}
    let v1 = vals.v[0].to_f64();
    assert!((v1[0] - xf[0]).abs() < 1e-15 && (v1[3] - xf[1]).abs() < 1e-15);
    assert_eq!(reconstruct_point(&vals, &f).unwrap(), x0);
}
