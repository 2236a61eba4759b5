use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hqf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hqf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn sample(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let o = hqf(&[&["sample"], args].concat());
    assert!(o.status.success(), "{}", stderr(&o));
    write(dir, name, &stdout(&o))
}

const NON_HARMONIC: &str = r#"{"format_version":1,"field":{"alpha":[{"e":[2,0,0],"c":"1/1"}],"u":[[],[],[]]}}"#;

#[test]
fn dims_header_only() {
    let o = hqf(&["dims", "--n-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "n,r,predicted,observed,match");
}

#[test]
fn dims_table_matches() {
    let o = hqf(&["dims", "--n-max", "4", "--families", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 3 + 4 + 5 + 6);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(rows.contains(&"4,5,9,9,true"));
    let j = hqf(&["dims", "--n-max", "2", "--format", "json"]);
    let v: Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn decompose_coordinate_field() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path(), "pi1.json", &["--pi", "1"]);
    let o = hqf(&["decompose", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["parts"].as_array().unwrap().len(), 1);
    assert_eq!(v["residual_zero"], Value::Bool(true));
    assert_eq!(v["verified"], Value::Bool(true));
}

#[test]
fn decompose_random_field_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path(), "r3.json", &["--random", "3", "--seed", "9"]);
    let out = dir.path().join("cert.json");
    let args = ["decompose", f.to_str().unwrap(), "--out", out.to_str().unwrap()];
    assert_eq!(hqf(&args).status.code(), Some(0));
    let first = std::fs::read_to_string(&out).unwrap();
    assert_eq!(hqf(&args).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["residual_zero"], Value::Bool(true));
    assert!(v["parts"].as_array().unwrap().len() > 1);
    assert!(v["axes_used"].as_u64().unwrap() >= 4);
}

#[test]
fn decompose_with_explicit_axes() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path(), "r2.json", &["--random", "2", "--seed", "4"]);
    let o = hqf(&["decompose", f.to_str().unwrap(), "--axes", "1,0,0;0,1,0;0,0,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let bad = hqf(&["decompose", f.to_str().unwrap(), "--axes", "1,0,0;-2,0,0"]);
    assert_eq!(bad.status.code(), Some(4));
}

#[test]
fn non_harmonic_input_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", NON_HARMONIC);
    let o = hqf(&["decompose", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("grad(alpha) - rot(u) = (2*x1, 0, 0)"), "{}", stderr(&o));
    let v = hqf(&["verify", f.to_str().unwrap()]);
    assert!(stdout(&v).contains("harmonic: false"));
}

#[test]
fn format_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "junk.json", "{not json");
    assert_eq!(hqf(&["verify", f.to_str().unwrap()]).status.code(), Some(4));
    let v2 = write(dir.path(), "v2.json", r#"{"format_version":2,"field":{"alpha":[],"u":[[],[],[]]}}"#);
    assert_eq!(hqf(&["verify", v2.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(hqf(&["verify", "/nonexistent/field.json"]).status.code(), Some(4));
}

#[test]
fn verify_reports_axis() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path(), "pi2.json", &["--pi", "2"]);
    let o = hqf(&["verify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("harmonic: true"));
    assert!(out.contains("axial axes found: [w1 (1, 0, 0)]"), "{out}");
}

#[test]
fn density_report() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path(), "pi1.json", &["--pi", "1"]);
    let zero = write(dir.path(), "zero.json", r#"{"format_version":1,"field":{"alpha":[],"u":[[],[],[]]}}"#);
    let o = hqf(&["density", f.to_str().unwrap(), zero.to_str().unwrap(), "--sphere-points", "100", "--radii", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let target: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(v["p_tilde"]["alpha"], target["field"]["alpha"]);
    assert_eq!(v["error_estimate"]["module_sup"].as_f64(), Some(0.0));

    let pert = write(
        dir.path(),
        "pert.json",
        r#"{"format_version":1,"field":{"alpha":[],"u":[[{"e":[1,0,0],"c":"1/10"}],[],[]]}}"#,
    );
    let o = hqf(&["density", f.to_str().unwrap(), pert.to_str().unwrap(), "--sphere-points", "100", "--radii", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["eta"][0]["c"], "1/10");
    assert_eq!(v["eta"][0]["e"], serde_json::json!([0, 0, 1]));
    assert!(v["certificates"].as_object().unwrap().values().all(|c| c == &Value::Bool(true)));
    assert!(v["error_estimate"]["module_sup"].as_f64().unwrap() > 0.0);
}

#[test]
fn characters_point_inside() {
    let o = hqf(&["characters", "--point", "1/2,-1/3,1/4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("reconstructed point: (1/2, -1/3, 1/4)"));
    assert!(out.contains("matches input: true"));
    let f = hqf(&["characters", "--point", "1/3,2/3,2/3", "--frame", "3/5,4/5,0;-4/5,3/5,0;0,0,1"]);
    assert_eq!(f.status.code(), Some(0), "{}", stderr(&f));
}

#[test]
fn characters_point_outside() {
    let o = hqf(&["characters", "--point", "2,0,0"]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("outside closed unit ball"));
    assert!(out.contains("3,64/1,8.000000"), "{out}");
}

#[test]
fn characters_values_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.json",
        r#"{"format_version":1,"values":[["1/2","0","0","-1/3"],["-1/3","1/4","0","0"],["1/4","0","1/2","0"]]}"#,
    );
    let o = hqf(&["characters", "--values", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("(1/2, -1/3, 1/4)"));
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"format_version":1,"values":[["1/2","0","0","-1/3"],["-1/3","1/4","0","0"],["1/5","0","1/2","0"]]}"#,
    );
    let o = hqf(&["characters", "--values", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("b23"), "{}", stderr(&o));
}

#[test]
fn witness_output() {
    let o = hqf(&["witness"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("pq = {x1*x2, (x1*x3, x2*x3, x2^2)}"));
    assert!(out.contains("div(u) = 2*x3"));
    assert!(out.contains("pq harmonic: false"));
    let j: Value = serde_json::from_slice(&hqf(&["witness", "--format", "json"]).stdout).unwrap();
    assert_eq!(j["pq_harmonic"], Value::Bool(false));
}
