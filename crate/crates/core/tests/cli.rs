//! End-to-end runs of the `norm-lab` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use norm_lab::theorems::WitnessRecord;
use norm_lab::Norm;

fn norms_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("norms")
}

fn norm_lab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_norm-lab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("NORM_LAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn run_norm(norm: &str, args: &[&str], out: &Path) -> Output {
    let file = norms_dir().join(norm);
    let mut all = vec!["--norm", file.to_str().unwrap()];
    all.extend_from_slice(args);
    norm_lab(&all, out)
}

fn witnesses(path: &Path) -> Vec<WitnessRecord> {
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    serde_json::from_value(doc["witnesses"].clone()).unwrap()
}

#[test]
fn witness_for_strictly_convex_norm_revalidates() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_norm("pnorm4.json", &["witness", "--lambda", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let n = Norm::from_json(r#"{"kind": "pnorm", "p": 4}"#).unwrap();
    let ws = witnesses(&dir.path().join("witness.json"));
    assert_eq!(ws.len(), 1);
    let w = ws[0].revalidate(&n).unwrap();
    assert!((w.lambda - 2.0).abs() <= 1e-8);
}

#[test]
fn witness_for_flat_norm_uses_the_construction() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_norm("linf.json", &["witness", "--lambda", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let ws = witnesses(&dir.path().join("witness.json"));
    assert_eq!(ws[0].z, norm_lab::Vec2::new(0.0, -0.5));
}

#[test]
fn euclidean_verify_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_norm("euclid.json", &["verify"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(doc["suites"][0]["checked"], 200);
    assert_eq!(doc["suites"][0]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(doc["classification"]["class"], "euclidean");
}

#[test]
fn input_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_norm("linf.json", &["witness", "--lambda", "1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda must differ from 1"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind": "polygon", "vertices": [[1, 0]], "p": 2}"#).unwrap();
    let out = norm_lab(&["classify", "--norm", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`p`"));

    let out = run_norm("linf.json", &["trace", "--count", "10"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let out = norm_lab(&["frobnicate", "--norm", "x.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_failure_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_norm("quadratic.json", &["witness", "--lambda", "2"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("straight line"));
}

#[test]
fn flat_norms_take_the_constructive_paths() {
    // props needs a strictly convex norm; verify builds the flat witness
    let dir = tempfile::tempdir().unwrap();
    let out = run_norm("linf.json", &["props"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let config = norm_lab::cli::RunConfig {
        pairs: 20,
        ..norm_lab::cli::RunConfig::new(norm_lab::cli::Command::Verify, norms_dir().join("l1.json"), dir.path())
    };
    let outcome = norm_lab::cli::run(&config).unwrap();
    assert_eq!(outcome.status, 0);
    assert_eq!(witnesses(&outcome.files[0]).len(), 1);
}

#[test]
fn outputs_are_byte_identical_across_runs_and_threads() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let cases: [(&str, &[&str], &[&str]); 4] = [
        ("pnorm1_5.json", &["verify", "--pairs", "40"], &["verify.json"]),
        ("pnorm4.json", &["props", "--frames", "5", "--samples", "100"], &["props.json"]),
        ("sheared_p3.json", &["witness", "--lambda", "0.5"], &["witness.json"]),
        ("hexagon.json", &["trace", "--t-max", "3", "--count", "31", "--theta", "0.3"], &["trace.csv", "trace.svg"]),
    ];
    for (norm, args, files) in cases {
        assert_eq!(run_norm(norm, args, a.path()).status.code(), Some(0), "{norm} {args:?}");
        let file = norms_dir().join(norm);
        let mut all = vec!["--norm", file.to_str().unwrap()];
        all.extend_from_slice(args);
        let out = Command::new(env!("CARGO_BIN_EXE_norm-lab"))
            .args(&all)
            .arg("--out")
            .arg(b.path())
            .env("NORM_LAB_THREADS", "1")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        for f in files {
            let (x, y) = (std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap());
            assert!(!x.is_empty());
            assert_eq!(x, y, "{f} differs");
        }
    }
    // no temporary files left behind by the atomic writes
    assert!(std::fs::read_dir(a.path()).unwrap().all(|e| !e.unwrap().file_name().to_string_lossy().ends_with(".tmp")));
}

#[test]
fn trace_csv_has_one_row_per_offset() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_norm("pnorm4.json", &["trace", "--count", "21"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(norm_lab::report::TRACE_CSV_HEADER));
    assert_eq!(lines.count(), 21);
}

#[test]
fn bad_thread_setting_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = norms_dir().join("euclid.json");
    let out = Command::new(env!("CARGO_BIN_EXE_norm-lab"))
        .args(["classify", "--norm", file.to_str().unwrap()])
        .env("NORM_LAB_THREADS", "many")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
