//! End-to-end runs of the `qrev` binary.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn qrev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrev")).args(args).output().expect("spawn qrev")
}

fn qrev_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qrev"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn qrev");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Entries `[a, b, c, d]` of a QMatrix JSON, as "a b c d" strings.
fn entry(m: &Value, r: usize, c: usize) -> Vec<String> {
    m["entries"][r][c].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect()
}

#[test]
fn omega_prints_the_three_by_three_case() {
    let v = json(&qrev(&["omega", "--lambda", "2,0", "--n", "3"]));
    let rows: Vec<Vec<String>> = serde_json::from_value(v["rows"].clone()).unwrap();
    assert_eq!(rows, vec![vec!["1/16", "1/8", "0"], vec!["0", "-1/4", "0"], vec!["0", "0", "1"]]);
    let v = json(&qrev(&["omega", "--lambda", "-1/2,1", "--n", "1"]));
    assert_eq!(v["lambda"], "-1/2+i");
}

#[test]
fn weyr_reports_the_dual_partition() {
    let v = json(&qrev(&["weyr", "--partition", "2,2,1"]));
    assert_eq!(v["weyr_structure"], "(3,2)");
    assert_eq!(v["conjugate"], "(3,2)");
    assert_eq!(v["exponent_form"], "[2^2,1^1]");
    assert_eq!(code(&qrev(&["weyr", "--partition", "2,0"])), 2);
}

#[test]
fn classify_single_imaginary_unit() {
    let v = json(&qrev(&["classify", "--jordan", "[(i,1)]"]));
    assert_eq!(v["reversible"], true);
    assert_eq!(v["strongly_reversible"], false);
    assert_eq!(v["psl_strongly_reversible"], true);
    assert!(v.get("approximate").is_none());
}

#[test]
fn classify_reads_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"blocks":[{"re":"2","im":"0","size":1},{"re":"1/2","im":"0","size":1}]}"#).unwrap();
    let v = json(&qrev(&["classify", "--jordan", path_str(&spec)]));
    assert_eq!(v["strongly_reversible"], true);
    let v = json(&qrev_stdin(&["classify", "--jordan", "-"], "[(2,1)]"));
    assert_eq!(v["psl_reversible"], false);
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(code(&qrev_stdin(&["classify", "--jordan", "-"], "{not json")), 2);
    assert_eq!(code(&qrev(&["classify", "--jordan", "[(0,1)]"])), 2);
    assert_eq!(code(&qrev(&["classify"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(&m, r#"{"n":1,"m":1,"entries":[[["x","0","0","0"]]]}"#).unwrap();
    assert_eq!(code(&qrev(&["classify", "--matrix", path_str(&m)])), 2);
}

#[test]
fn classify_numeric_matrix() {
    // S · J(i, 2) · S⁻¹ with S = [[1, j], [0, 1]]: A = [[i, 1 - 2k], [0, i]].
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(
        &m,
        r#"{"n":2,"entries":[[[0,1,0,0],[1,0,0,-2]],[[0,0,0,0],[0,1,0,0]]]}"#,
    )
    .unwrap();
    let v = json(&qrev(&["classify", "--mode", "numeric", "--matrix", path_str(&m)]));
    assert_eq!(v["spec"]["blocks"][0]["size"], 2);
    assert_eq!(v["spec"]["blocks"][0]["im"], "1");
    assert_eq!(v["approximate"], false);
    assert_eq!(v["reversible"], true);
    assert_eq!(v["neg_reversible"], true);
    // The same file is not in Jordan form, so exact mode refuses it.
    let exact = dir.path().join("exact.json");
    std::fs::write(
        &exact,
        r#"{"n":2,"m":2,"entries":[[["0","1","0","0"],["1","0","0","-2"]],[["0","0","0","0"],["0","1","0","0"]]]}"#,
    )
    .unwrap();
    assert_eq!(code(&qrev(&["classify", "--matrix", path_str(&exact)])), 3);
    assert_eq!(
        code(&qrev(&["classify", "--mode", "numeric", "--rank-tol", "1e-9", "--matrix", path_str(&exact)])),
        0
    );
}

#[test]
fn numeric_singular_matrix_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(&m, r#"{"n":1,"entries":[[[0,0,0,0]]]}"#).unwrap();
    assert_eq!(code(&qrev(&["classify", "--mode", "numeric", "--matrix", path_str(&m)])), 3);
}

#[test]
fn certify_reproduces_the_iota_involution() {
    let v = json(&qrev(&["certify", "--jordan", "[(i,5)]", "--target", "neg-inverse", "--flavor", "involution"]));
    assert_eq!(v["target"], "neg-inverse");
    assert_eq!(v["flavor"], "involution");
    assert_eq!(v["checks"]["residual_zero"], true);
    let g = &v["g"];
    let first_row: Vec<Vec<String>> = (0..5).map(|c| entry(g, 0, c)).collect();
    assert_eq!(
        first_row,
        vec![
            vec!["1", "0", "0", "0"],
            vec!["0", "-3", "0", "0"],
            vec!["-3", "0", "0", "0"],
            vec!["0", "1", "0", "0"],
            vec!["0", "0", "0", "0"],
        ]
    );
}

#[test]
fn certify_refuses_odd_unit_multiplicity() {
    let out = qrev(&["certify", "--jordan", "[(3/5+4/5i,1)]", "--target", "inverse", "--flavor", "involution"]);
    assert_eq!(code(&out), 4);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("even multiplicity"), "{err}");
    let out = qrev(&["certify", "--jordan", "[(3/5+4/5i,1)]", "--flavor", "skew-involution"]);
    assert_eq!(json(&out)["flavor"], "skew-involution");
}

#[test]
fn verify_and_decompose_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let cert = dir.path().join("cert.json");
    for (spec, target, flavor, squares) in [
        ("[(2,2),(1/2,2),(-1,1)]", "inverse", "involution", ("+I", "+I")),
        ("[(1+i,1),(1/2+1/2i,1),(3/5+4/5i,2)]", "inverse", "any", ("-I", "-I")),
        ("[(i,3),(2,1),(-1/2,1)]", "neg-inverse", "involution", ("-I", "+I")),
    ] {
        let out = qrev(&[
            "certify", "--jordan", spec, "--target", target, "--flavor", flavor,
            "--emit-matrix", path_str(&a), "--out", path_str(&cert),
        ]);
        assert!(out.status.success(), "{spec}: {}", String::from_utf8_lossy(&out.stderr));
        let report = json(&qrev(&["verify", "--matrix", path_str(&a), "--certificate", path_str(&cert)]));
        assert_eq!(report["accepted"], true, "{spec}");
        let f = json(&qrev(&["decompose", "--matrix", path_str(&a), "--certificate", path_str(&cert)]));
        assert_eq!((f["s1_square"].as_str().unwrap(), f["s2_square"].as_str().unwrap()), squares, "{spec}");
    }
}

#[test]
fn verify_rejects_a_tampered_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let cert = dir.path().join("cert.json");
    let out = qrev(&["certify", "--jordan", "[(1,3)]", "--emit-matrix", path_str(&a), "--out", path_str(&cert)]);
    assert!(out.status.success());
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    v["g"]["entries"][0][1][0] = Value::from("5");
    std::fs::write(&cert, v.to_string()).unwrap();
    let out = qrev(&["verify", "--matrix", path_str(&a), "--certificate", path_str(&cert)]);
    assert_eq!(code(&out), 5);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"]["residual_zero"], false);
    let out = qrev(&["decompose", "--matrix", path_str(&a), "--certificate", path_str(&cert)]);
    assert_eq!(code(&out), 5);
}

#[test]
fn output_is_deterministic() {
    let args = ["certify", "--jordan", "[(3/5+4/5i,2),(3/5+4/5i,2),(-2,1),(-1/2,1)]", "--flavor", "involution"];
    let first = qrev(&args);
    let second = qrev(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}
