use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn qinv(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_qinv")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    let json = serde_json::from_str(&text).unwrap_or_else(|e| panic!("invalid JSON ({e}): {text}"));
    (out.status.code().expect("exit code"), json)
}

fn write_state(dir: &TempDir, name: &str, k: usize, amps: &[(usize, f64)]) -> PathBuf {
    let mut a = vec![[0.0, 0.0]; 1 << k];
    for &(i, v) in amps {
        a[i] = [v, 0.0];
    }
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::json!({ "k": k, "amplitudes": a }).to_string()).unwrap();
    path
}

fn ghz3(dir: &TempDir) -> PathBuf {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    write_state(dir, "ghz3.json", 3, &[(0, h), (7, h)])
}

#[test]
fn measure_ghz() {
    let dir = TempDir::new().unwrap();
    let (code, v) = qinv(&["measure", "--state", ghz3(&dir).to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((v["Q"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    for d in v["d1"].as_array().unwrap() {
        assert!((d.as_f64().unwrap() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn hilbert_lut_three_qubits() {
    let (code, v) = qinv(&["hilbert", "--group", "lut", "--k", "3", "--max-degree", "6", "--method", "character"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!([1, 0, 1, 0, 4, 0, 5]));
    let (_, ct) = qinv(&["hilbert", "--group", "lut", "--k", "3", "--max-degree", "6", "--method", "ct"]);
    let (_, cf) = qinv(&["hilbert", "--group", "lut", "--k", "3", "--max-degree", "6", "--method", "closed-form"]);
    assert_eq!(ct, v);
    assert_eq!(cf, v);
}

#[test]
fn classify_w() {
    let dir = TempDir::new().unwrap();
    let r = 1.0 / 3f64.sqrt();
    let w = write_state(&dir, "w3.json", 3, &[(1, r), (2, r), (4, r)]);
    let (code, v) = qinv(&["classify", "--state", w.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["label"], "W");
    assert_eq!(v["nonzero"]["D_000"], false);
}

#[test]
fn eval_reports_value_and_kind() {
    let dir = TempDir::new().unwrap();
    let (code, v) = qinv(&["eval", "--state", ghz3(&dir).to_str().unwrap(), "--invariant", "A"]);
    assert_eq!(code, 0);
    assert!((v["value"][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["kind"], "LUT");
}

#[test]
fn errors_are_structured() {
    let dir = TempDir::new().unwrap();
    let ghz = ghz3(&dir);
    let (code, v) = qinv(&["eval", "--state", ghz.to_str().unwrap(), "--invariant", "nope"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "unknown_name");
    let (code, v) = qinv(&["eval", "--state", ghz.to_str().unwrap(), "--invariant", "A", "--k", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "dimension");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let (code, v) = qinv(&["measure", "--state", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "parse");
    let (code, v) = qinv(&["measure", "--state", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("cannot read"));
    let (code, _) = qinv(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn covariant_lookup() {
    let (code, v) = qinv(&["covariant", "--k", "3", "--name", "T", "--print"]);
    assert_eq!(code, 0);
    assert_eq!(v["multidegree"], serde_json::json!([1, 1, 1]));
    assert!(v["polynomial"].as_str().unwrap().contains("a000"));
}

#[test]
fn verify_is_deterministic_and_signals_failure() {
    let args = ["verify", "--suite", "classification", "--trials", "5", "--seed", "7"];
    let (code, a) = qinv(&args);
    let (_, b) = qinv(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let (code, v) = qinv(&["verify", "--suite", "identities", "--k", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["passed"], false);
}
