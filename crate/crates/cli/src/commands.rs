use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{json, Value};

use hqf_core::characters::{
    growth_demonstration, non_closure_witness, reconstruct_point, Dirac, Frame, FunctionalValues,
};
use hqf_core::decomp::{decompose_full, span_dimension, AxisFamily, DecomposeOptions};
use hqf_core::density::{approximate_on, divergence_correction};
use hqf_core::poly::calculus::{harmonic_defects, require_harmonic};
use hqf_core::poly::{Axis, QuaternionPolyField};
use hqf_core::random::rng;
use hqf_core::rational::{format_rational, Vec3};
use hqf_core::sampling::BallGrid;
use hqf_core::spaces::{detect_axis, is_axial_harmonic};
use hqf_core::Error;

use crate::format::{
    field_to_json, parse_axes, parse_vec, poly_to_json, quaternion_from_json, quaternion_to_json,
    vec_from_json, vec_to_json, FieldFile, VecJson, FORMAT_VERSION,
};
use crate::{CliError, OutputFormat};

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

pub fn write_out(text: String, out: Option<PathBuf>) -> Result<String, CliError> {
    match out {
        Some(path) => {
            std::fs::write(&path, format!("{text}\n"))
                .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn defects_message(p: &QuaternionPolyField) -> String {
    let (g, d) = harmonic_defects(p);
    format!("field is not harmonic: grad(alpha) - rot(u) = {g}, div(u) = {d}")
}

fn require_harmonic_input(p: &QuaternionPolyField) -> Result<(), CliError> {
    require_harmonic(p).map_err(|_| CliError::Invalid(defects_message(p)))
}

pub fn dims(
    n_max: u32,
    r_max: Option<usize>,
    seed: u64,
    families: usize,
    format: OutputFormat,
) -> Result<String, CliError> {
    let mut r = rng(seed);
    let mut rows = Vec::new();
    let mut offending: Option<(u32, usize, AxisFamily, usize)> = None;
    for n in 1..=n_max {
        for size in 1..=r_max.unwrap_or(n as usize + 2) {
            let predicted = (2 * size).min(2 * n as usize + 1);
            let mut observed = predicted;
            for _ in 0..families {
                let fam = AxisFamily::random(size, &mut r);
                let o = span_dimension(n, &fam)?;
                if o != predicted && observed == predicted {
                    observed = o;
                    offending.get_or_insert((n, size, fam, o));
                }
            }
            rows.push((n, size, predicted, observed));
        }
    }
    let report = match format {
        OutputFormat::Json => pretty(&Value::Array(
            rows.iter()
                .map(|(n, r, p, o)| json!({"n": n, "r": r, "predicted": p, "observed": o, "match": p == o}))
                .collect(),
        )),
        _ => {
            let mut s = String::from("n,r,predicted,observed,match");
            for (n, r, p, o) in &rows {
                write!(s, "\n{n},{r},{p},{o},{}", p == o).unwrap();
            }
            s
        }
    };
    match offending {
        None => Ok(report),
        Some((n, size, fam, o)) => {
            let axes: Vec<String> = fam.axes().iter().map(|a| a.to_string()).collect();
            Err(CliError::Report {
                report,
                message: format!(
                    "n={n} r={size}: observed {o}, predicted {}; family: {}",
                    (2 * size).min(2 * n as usize + 1),
                    axes.join("; ")
                ),
                code: 2,
            })
        }
    }
}

fn axis_json(w: &Axis) -> VecJson {
    vec_to_json(w.vector())
}

pub fn decompose(path: &Path, axes: Option<&str>, seed: u64) -> Result<String, CliError> {
    let file = FieldFile::read(path)?;
    let p = file.quaternion_field()?;
    require_harmonic_input(&p)?;
    let axes = match axes {
        Some(s) => parse_axes(s)?,
        None => match file.axes()? {
            Some(a) => a,
            None => AxisFamily::generate(p.degree().unwrap_or(0) as usize + 1, seed)
                .axes()
                .to_vec(),
        },
    };
    let fam = AxisFamily::new(axes).map_err(|e| CliError::Format(e.to_string()))?;
    let opts = DecomposeOptions {
        axis_cap: None,
        seed,
    };
    let d = decompose_full(&p, &fam, &opts)?;
    let verified = d.verify();
    let cert = json!({
        "format_version": FORMAT_VERSION,
        "target": field_to_json(&d.target),
        "axes_given": fam.axes().iter().map(axis_json).collect::<Vec<_>>(),
        "axes_used": d.axes_used,
        "parts": d.parts.iter().map(|(w, q)| json!({
            "axis": axis_json(w),
            "field": field_to_json(q),
            "axial_harmonic": is_axial_harmonic(q, w),
        })).collect::<Vec<_>>(),
        "residual": field_to_json(&d.residual),
        "residual_zero": d.is_complete(),
        "verified": verified,
    });
    let text = pretty(&cert);
    if verified {
        Ok(text)
    } else {
        Err(CliError::Report {
            report: text,
            message: "decomposition certificate failed".into(),
            code: 2,
        })
    }
}

pub fn verify(path: &Path, format: OutputFormat) -> Result<String, CliError> {
    let file = FieldFile::read(path)?;
    let p = file.quaternion_field()?;
    let (g, d) = harmonic_defects(&p);
    let harmonic = g.is_zero() && d.is_zero();
    let frame = file.frame()?.unwrap_or_else(Frame::standard);
    let mut candidates: Vec<(String, Axis)> = (0..3)
        .map(|k| (format!("w{}", k + 1), frame.axis(k)))
        .collect();
    for (i, a) in file.axes()?.unwrap_or_default().into_iter().enumerate() {
        candidates.push((format!("axis{}", i + 1), a));
    }
    if let Some(a) = detect_axis(&p) {
        if candidates.iter().all(|(_, c)| !c.is_collinear(&a)) {
            candidates.push(("detected".into(), a));
        }
    }
    let found: Vec<&(String, Axis)> = if harmonic && !p.is_zero() {
        candidates.iter().filter(|(_, w)| is_axial_harmonic(&p, w)).collect()
    } else {
        Vec::new()
    };
    Ok(match format {
        OutputFormat::Json => pretty(&json!({
            "harmonic": harmonic,
            "gradient_defect": g.0.iter().map(poly_to_json).collect::<Vec<_>>(),
            "divergence": poly_to_json(&d),
            "axial_axes": found.iter().map(|(name, w)| json!({"name": name, "axis": axis_json(w)})).collect::<Vec<_>>(),
        })),
        _ => {
            let names: Vec<String> = found.iter().map(|(n, w)| format!("{n} {w}")).collect();
            let mut s = format!("harmonic: {harmonic}\naxial axes found: [{}]", names.join(", "));
            if !harmonic {
                write!(s, "\ngrad(alpha) - rot(u) = {g}\ndiv(u) = {d}").unwrap();
            }
            s
        }
    })
}

pub fn density(
    field: &Path,
    perturbation: &Path,
    sphere_points: usize,
    radii: usize,
) -> Result<String, CliError> {
    let p = FieldFile::read(field)?.quaternion_field()?;
    let pert_field = FieldFile::read(perturbation)?.quaternion_field()?;
    if !pert_field.alpha.is_zero() {
        return Err(CliError::Format("perturbation file must have an empty alpha".into()));
    }
    require_harmonic_input(&p)?;
    let pert = pert_field.u;
    let rep = divergence_correction(&(&p.u + &pert))?;
    let grid = BallGrid::new(sphere_points, radii);
    let (p_tilde, err) = approximate_on(&p, &pert, &grid)?;
    let c = &rep.certificates;
    let out = json!({
        "format_version": FORMAT_VERSION,
        "input_v": rep.input_v.0.iter().map(poly_to_json).collect::<Vec<_>>(),
        "q": poly_to_json(&rep.q),
        "r": poly_to_json(&rep.r),
        "eta": poly_to_json(&rep.eta),
        "u_tilde": rep.u_tilde.0.iter().map(poly_to_json).collect::<Vec<_>>(),
        "certificates": {
            "div_u_tilde_zero": c.div_free,
            "laplacian_u_tilde_zero": c.components_harmonic,
            "laplacian_eta_zero": c.eta_harmonic,
            "d3_eta_equals_div_v": c.eta_matches_divergence,
            "laplacian_r_zero": c.r_harmonic,
            "q_minus_r_vanishes_on_circle": c.boundary_match,
        },
        "p_tilde": field_to_json(&p_tilde),
        "error_estimate": {
            "component_sup": err.component_sup,
            "module_sup": err.module_sup,
            "samples": err.samples,
        },
    });
    let text = pretty(&out);
    if c.all() {
        Ok(text)
    } else {
        Err(CliError::Report {
            report: text,
            message: "density certificates failed".into(),
            code: 2,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ValuesFile {
    format_version: u32,
    values: [[String; 4]; 3],
    #[serde(default)]
    frame: Option<[VecJson; 3]>,
}

fn parse_frame(s: &str) -> Result<Frame, CliError> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 3 {
        return Err(CliError::Format("frame needs three vectors separated by ';'".into()));
    }
    Frame::new(parse_vec(parts[0])?, parse_vec(parts[1])?, parse_vec(parts[2])?)
        .map_err(|e| CliError::Format(e.to_string()))
}

fn growth_table(x0: &Vec3, powers: u32) -> Result<String, CliError> {
    let rows = growth_demonstration(x0, powers, &BallGrid::default())?;
    let mut s = String::from("j,value_module_sq_normalized,value_module_normalized,ball_sup_normalized");
    for r in rows {
        let v = hqf_core::rational::to_f64(&r.value_module_sq);
        write!(
            s,
            "\n{},{},{:.6},{:.6}",
            r.power,
            format_rational(&r.value_module_sq),
            v.sqrt(),
            r.ball_sup
        )
        .unwrap();
    }
    Ok(s)
}

pub fn characters(
    point: Option<&str>,
    values: Option<&Path>,
    frame: Option<&str>,
    powers: u32,
    format: OutputFormat,
) -> Result<String, CliError> {
    let mut frame = match frame {
        Some(s) => parse_frame(s)?,
        None => Frame::standard(),
    };
    let (vals, input) = match (point, values) {
        (Some(p), _) => {
            let x0 = parse_vec(p)?;
            let d = match Dirac::new(x0.clone()) {
                Ok(d) => d,
                Err(Error::OutsideBall(r)) => {
                    let report = format!(
                        "point {x0} lies outside closed unit ball (|x|^2 = {r})\n\
                         growth of axial generator powers through the point:\n{}",
                        growth_table(&x0, powers)?
                    );
                    return Err(CliError::Report {
                        report,
                        message: "outside closed unit ball".into(),
                        code: 3,
                    });
                }
                Err(e) => return Err(e.into()),
            };
            (d.values(&frame), Some(x0))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
            let vf: ValuesFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Format(format!("values file: {e}")))?;
            if vf.format_version != FORMAT_VERSION {
                return Err(CliError::Format(format!(
                    "unsupported format_version {}",
                    vf.format_version
                )));
            }
            if let Some(f) = &vf.frame {
                frame = Frame::new(vec_from_json(&f[0])?, vec_from_json(&f[1])?, vec_from_json(&f[2])?)
                    .map_err(|e| CliError::Format(e.to_string()))?;
            }
            let v = [
                quaternion_from_json(&vf.values[0])?,
                quaternion_from_json(&vf.values[1])?,
                quaternion_from_json(&vf.values[2])?,
            ];
            (FunctionalValues { v }, None)
        }
        (None, None) => return Err(CliError::Format("either --point or --values is required".into())),
    };
    let x = reconstruct_point(&vals, &frame)?;
    let inside = x.norm_sq() <= hqf_core::rational::int(1);
    let matches = input.as_ref().map(|x0| *x0 == x);
    let text = match format {
        OutputFormat::Json => pretty(&json!({
            "values": vals.v.iter().map(quaternion_to_json).collect::<Vec<_>>(),
            "point": vec_to_json(&x),
            "in_closed_ball": inside,
            "matches_input": matches,
        })),
        _ => {
            let mut s = String::new();
            for (k, v) in vals.v.iter().enumerate() {
                writeln!(s, "mu(pi{}) = {v}", k + 1).unwrap();
            }
            write!(s, "reconstructed point: {x}\nin closed ball: {inside}").unwrap();
            if let Some(m) = matches {
                write!(s, "\nmatches input: {m}").unwrap();
            }
            s
        }
    };
    if matches == Some(false) {
        return Err(CliError::Report {
            report: text,
            message: "reconstructed point differs from the input".into(),
            code: 2,
        });
    }
    if !inside {
        return Err(CliError::Report {
            report: text,
            message: "reconstructed point is outside closed unit ball".into(),
            code: 3,
        });
    }
    Ok(text)
}

pub fn witness(format: OutputFormat) -> String {
    let w = non_closure_witness();
    match format {
        OutputFormat::Json => pretty(&json!({
            "p": field_to_json(&w.p),
            "q": field_to_json(&w.q),
            "pq": field_to_json(&w.pq),
            "gradient_defect": w.gradient_defect.0.iter().map(poly_to_json).collect::<Vec<_>>(),
            "divergence": poly_to_json(&w.divergence),
            "pq_harmonic": w.product_harmonic,
        })),
        _ => format!(
            "p = {}\nq = {}\npq = {}\ngrad(alpha) - rot(u) = {}\ndiv(u) = {}\npq harmonic: {}",
            w.p, w.q, w.pq, w.gradient_defect, w.divergence, w.product_harmonic
        ),
    }
}

pub fn sample(pi: Option<usize>, random: Option<u32>, seed: u64) -> Result<String, CliError> {
    let p = match (pi, random) {
        (Some(k @ 1..=3), _) => hqf_core::characters::coordinate_fields(&Frame::standard())[k - 1].clone(),
        (Some(k), _) => return Err(CliError::Format(format!("coordinate field index {k} is not 1, 2 or 3"))),
        (None, Some(n)) => hqf_core::random::quat_harmonic(&mut rng(seed), n)?,
        (None, None) => return Err(CliError::Format("either --pi or --random is required".into())),
    };
    Ok(FieldFile::new(&p).to_json())
}
