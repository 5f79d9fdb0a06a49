use std::path::Path;
use std::process::{Command, Output};

fn fdps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdps")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const REMARK1: &str = r#"{"basis":"monomial","coeffs":["-28/1","39/1","-12/1","1/1"]}"#;
const U: &str = r#"{"coeffs":[{"basis":"monomial","coeffs":["1","3/4"]},{"basis":"monomial","coeffs":["0","-3/4"]}]}"#;

#[test]
fn mesh_reports_the_remark1_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", REMARK1);
    let out = dir.path().join("mesh.json");
    let o = fdps(&["mesh", &p, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("hyperbolic: true"));
    assert!(s.contains("roots >= 0: true"));
    assert!(s.contains("mesh = 3"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["mesh"]["exact"]["finite"], "3/1");
}

#[test]
fn apply_reproduces_remark1() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", REMARK1);
    let u = write(dir.path(), "u.json", U);
    let out = dir.path().join("roots.csv");
    let o = fdps(&["apply", "--op", &u, &p, "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(out).unwrap();
    let roots: Vec<f64> = rdr.records().map(|r| r.unwrap()[3].parse().unwrap()).collect();
    for (r, e) in roots.iter().zip([0.433167, 3.12467, 6.36524]) {
        assert!((r - e).abs() < 1e-4, "{roots:?}");
    }
    assert_eq!(roots.len(), 3);
}

#[test]
fn convert_switches_basis() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", REMARK1);
    let o = fdps(&["convert", &p, "--to", "pochhammer"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"basis":"pochhammer","coeffs":["-28/1","28/1","-9/1","1/1"]}"#);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"basis\": \"monomial\", \"coeffs\": [\"1/0\"]}");
    assert_eq!(fdps(&["mesh", &bad]).status.code(), Some(2));
    assert_eq!(fdps(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(fdps(&["search", "nice", "--seed", "x"]).status.code(), Some(2));
    assert_eq!(fdps(&["mesh", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn dms_failure_writes_a_replayable_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let seq = write(dir.path(), "s.json", r#"{"values":["1","1/2","1/4","1/8","1/16"]}"#);
    let out = dir.path().join("verdict.json");
    let o = fdps(&["verify", "dms", &seq, "--trials", "50", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(fdps(&["replay", out.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn herpou_and_riesz_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.json", r#"{"basis":"monomial","coeffs":["1","1"]}"#);
    let o = fdps(&["verify", "herpou", &q]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("herpou_necessity: fails on p = x^2 - x"));
    let o = fdps(&["verify", "riesz", "--lambda", "-2", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let o = fdps(&["verify", "riesz", "--lambda", "3", "--alpha", "3/2", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn search_records_replay() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r2.jsonl");
    let o = fdps(&["search", "remark2", "--trials", "5", "--max-degree", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 5);
    let first = write(dir.path(), "rec.json", text.lines().next().unwrap());
    let o = fdps(&["replay", &first]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("reproduced"));
}

#[test]
fn tampered_witness_does_not_replay() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r2.jsonl");
    fdps(&["search", "remark2", "--trials", "1", "--out", out.to_str().unwrap()]);
    let mut rec: serde_json::Value = serde_json::from_str(std::fs::read_to_string(&out).unwrap().trim()).unwrap();
    rec["witness"]["image"]["coeffs"][0] = "12345/1".into();
    let path = write(dir.path(), "w.json", &rec["witness"].to_string());
    assert_eq!(fdps(&["replay", &path]).status.code(), Some(1));
}

#[test]
fn search_csv_has_one_row_per_trial() {
    let o = fdps(&["search", "bullet", "--trials", "7", "--max-degree", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().get(2), Some("status"));
    assert_eq!(rdr.records().count(), 7);
}
