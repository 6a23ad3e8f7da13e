use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TRIANGLE: &str = r#"{"dim": 2, "mean": 0.0, "modes": [
    {"k": [1, 0], "re": 0.5, "im": 0.0},
    {"k": [0, 1], "re": 0.5, "im": 0.0},
    {"k": [1, 1], "re": 0.5, "im": 0.0}]}"#;

const TRIANGLE_QUARTER_TURN: &str = r#"{"dim": 2, "mean": 0.0, "modes": [
    {"k": [1, 0], "re": 0.5, "im": 0.0},
    {"k": [0, 1], "re": 0.5, "im": 0.0},
    {"k": [1, 1], "re": 0.0, "im": 0.5}]}"#;

const TRANSLATED: &str = r#"{"dim": 2, "mean": 0.0, "modes": [
    {"k": [1, 0], "re": 0.0, "im": 0.5},
    {"k": [0, 1], "re": -0.5, "im": 0.0},
    {"k": [1, 1], "re": 0.0, "im": -0.5}]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn effham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_effham")).args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn eval_reports_value() {
    let dir = TempDir::new().unwrap();
    let v = write(&dir, "v.json", TRIANGLE);
    let out = effham(&["eval", "--potential", p(&v), "--x", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert!((doc["value"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn expand_matches_requested_order() {
    let dir = TempDir::new().unwrap();
    let v = write(&dir, "v.json", TRIANGLE);
    let out = effham(&["expand", "--potential", p(&v), "--Q", "1,0.7", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let a = doc["a"].as_array().unwrap();
    assert_eq!(a.len(), 5);
    assert!((a[0].as_f64().unwrap() - 0.745).abs() < 1e-15);
    assert!(doc["min_denominator"].as_f64().unwrap() > 0.29);
}

#[test]
fn expand_rejects_resonant_q() {
    let dir = TempDir::new().unwrap();
    let v = write(&dir, "v.json", TRIANGLE);
    let out = effham(&["expand", "--potential", p(&v), "--Q", "1,-1", "--order", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resonant"));
}

#[test]
fn hbar_writes_csv() {
    let dir = TempDir::new().unwrap();
    let v = write(&dir, "v.json", TRIANGLE);
    let csv = dir.path().join("h.csv");
    let out = effham(&[
        "hbar", "--potential", p(&v), "--p-grid", "0:1:1,0:0:1", "--grid", "24", "--output", p(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p1,p2,hbar,error_estimate");
    assert_eq!(lines.len(), 3);
    let h0: f64 = lines[1].split(',').nth(2).unwrap().parse().unwrap();
    assert!((h0 - 3.0).abs() < 2e-2);
}

#[test]
fn decide_exit_codes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", TRIANGLE);
    let b = write(&dir, "b.json", TRIANGLE_QUARTER_TURN);
    let t = write(&dir, "t.json", TRANSLATED);

    let out = effham(&["decide", "--a", p(&a), "--b", p(&b)]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["tag"], "NotEquivalent");
    assert_eq!(doc["witness"], "phase-condition-failed");

    let out = effham(&["decide", "--a", p(&a), "--b", p(&t)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["tag"], "TransformEquivalent");
    assert_eq!(doc["c"], "1");
    assert_eq!(doc["x0"].as_array().unwrap().len(), 2);

    let four = write(
        &dir,
        "four.json",
        r#"{"dim": 2, "modes": [{"k": [1, 0], "re": 1}, {"k": [0, 1], "re": 1}, {"k": [1, 1], "re": 1}, {"k": [1, -1], "re": 1}]}"#,
    );
    let out = effham(&["decide", "--a", p(&four), "--b", p(&four)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["tag"], "OutOfScope");
}

#[test]
fn malformed_potentials_exit_with_error() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", TRIANGLE);
    let parallel = write(&dir, "p.json", r#"{"dim": 2, "modes": [{"k": [1, 1], "re": 1}, {"k": [2, 2], "re": 1}]}"#);
    let unknown = write(&dir, "u.json", r#"{"dim": 2, "modes": [], "extra": 1}"#);
    for bad in [&parallel, &unknown] {
        let out = effham(&["decide", "--a", p(&a), "--b", p(bad)]);
        assert_eq!(out.status.code(), Some(3));
        assert!(out.stdout.is_empty());
    }
    let out = effham(&["eval", "--potential", p(&a), "--x", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    let out = effham(&["nonsense"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mfunc_trace_is_symmetric() {
    let out = effham(&["mfunc", "--r", "1,1,1", "--alpha", "1,1", "--range", "0:6.283185307179586:0.7853981633974483"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# l = 1 pi"));
    assert_eq!(lines.next().unwrap(), "t,M");
    let m: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(m.len(), 9);
    assert!((m[0] - 3.0).abs() < 1e-12 && (m[8] - 3.0).abs() < 1e-9);
    assert!((m[4] - 1.5).abs() < 1e-10);
    for i in 0..m.len() {
        assert!((m[i] - m[m.len() - 1 - i]).abs() < 1e-9);
    }
}

#[test]
fn verify_flags_consistency() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", TRIANGLE);
    let b = write(&dir, "b.json", TRIANGLE_QUARTER_TURN);
    let out = effham(&["verify", "--a", p(&a), "--b", p(&b), "--grid", "32", "--p-grid", "0:0:1", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["consistent"], true);
    assert_eq!(doc["verdict"]["witness"], "phase-condition-failed");
    let max = doc["torus_max"].as_array().unwrap();
    assert!(max[0].as_f64().unwrap() - max[1].as_f64().unwrap() >= 1e-2);
    assert_eq!(doc["coefficients"].as_array().unwrap().len(), 3);
}
