//! End-to-end checks of the `kplane` binary: exit codes, schemas,
//! determinism, and replay.

use std::path::PathBuf;
use std::process::{Command, Output};

fn kplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kplane"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmpdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kplane_cli_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn pipeline_reports_exact_final_exponents() {
    let out = kplane(&["exponents", "pipeline", "--name", "sharpp", "--d", "10", "--k", "4"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["tables"][0]["rows"].as_array().unwrap();
    let last = rows.last().unwrap().as_array().unwrap();
    assert_eq!(last[5], "40/19");
    assert_eq!(last[7], "30/19");
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks[0]["value"], "exact");
}

#[test]
fn kcrit_prints_twelve_decimals() {
    let out = kplane(&["exponents", "kcrit", "--d", "7", "--seed", "bourgain"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["tables"][0]["rows"][0][2], "3.000000000000");
}

#[test]
fn precondition_violation_exits_2_and_names_hypothesis() {
    let out = kplane(&[
        "exponents", "pipeline", "--name", "nak", "--d", "10", "--k", "4", "--j", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("j <= k-4"), "stderr: {err}");
}

#[test]
fn usage_error_exits_1() {
    let out = kplane(&["exponents", "pipeline", "--name", "nonsense", "--d", "5", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kplane(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn xray_file_pipeline_and_shape_contract() {
    let dir = tmpdir();
    let f = dir.join("f.gf");
    let g = dir.join("g.gf");
    let out = kplane(&[
        "transform", "synth", "--kind", "ball", "--d", "3", "--n", "32", "--radius", "0.8",
        "--out-file", f.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = kplane(&[
        "transform", "xray", "--input", f.to_str().unwrap(), "--direction", "0,0,1",
        "--out-file", g.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let gf = kplane_lab::gridfile::read_gridfunction(&g).unwrap();
    assert_eq!(gf.d(), 2, "x-ray output drops one dimension");

    // Malformed header diagnoses at exit 1.
    let bad = dir.join("bad.gf");
    std::fs::write(&bad, b"{\"format_version\":9}\nxxxx").unwrap();
    let out = kplane(&["transform", "info", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical_and_replayable() {
    let dir = tmpdir();
    let args = [
        "verify", "graproduct", "--d", "3", "--k", "2", "--samples", "4000", "--seed", "11",
    ];
    let a = kplane(&args);
    let b = kplane(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reruns must be byte-identical");

    // Replay from the emitted report reproduces the same bytes.
    let report_path = dir.join("report.json");
    std::fs::write(&report_path, &a.stdout).unwrap();
    let c = kplane(&["replay", report_path.to_str().unwrap()]);
    assert!(c.status.success());
    assert_eq!(a.stdout, c.stdout, "replay must be byte-identical");
}

#[test]
fn thread_count_does_not_change_output() {
    let base = [
        "scaling", "--family", "ball", "--d", "2", "--k", "1", "--p", "2", "--q", "2",
        "--deltas", "0.2,0.1,0.05", "--resolution", "256", "--frames", "16",
        "--samples", "512", "--seed", "3",
    ];
    let mut one = base.to_vec();
    one.extend_from_slice(&["--threads", "1"]);
    let mut two = base.to_vec();
    two.extend_from_slice(&["--threads", "2"]);
    let a = kplane(&one);
    let b = kplane(&two);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout, "outputs must not depend on thread count");
}

#[test]
fn sample_frame_emits_full_precision_rows() {
    let out = kplane(&["sample-frame", "--d", "4", "--k", "2", "--seed", "7"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].as_array().unwrap().len(), 4);
    // 17 significant digits round-trip the f64 exactly.
    let cell = rows[0][0].as_str().unwrap();
    let x: f64 = cell.parse().unwrap();
    assert_eq!(format!("{x:.16e}"), cell);
}

#[test]
fn csv_format_has_fit_columns() {
    let out = kplane(&[
        "scaling", "--family", "ball", "--d", "2", "--k", "1", "--p", "2", "--q", "2",
        "--deltas", "0.2,0.1,0.05", "--resolution", "256", "--frames", "8",
        "--samples", "256", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("slope"), "csv: {text}");
    assert!(text.contains("residual"));
    assert!(text.lines().any(|l| l.starts_with("sweep,")));
}
