use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sta_verify::suites::SUITES;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("verify runs")
}

fn read_report(dir: &Path, scenario: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join(format!("{scenario}.report.json"))).expect("report written");
    serde_json::from_str(&text).expect("report is JSON")
}

#[test]
fn list_suites_prints_the_catalog() {
    let out = verify(&["list-suites"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(SUITES.len(), 7);
    for s in &SUITES {
        assert!(text.contains(s.name), "{} missing from catalog", s.name);
        for check in s.checks {
            assert!(text.contains(check), "{check} missing from catalog");
        }
    }
    assert!(text.contains("dirac-triad"));
}

#[test]
fn report_has_every_catalog_check_once() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let out = verify(&["run", fixture("pass.json").to_str().unwrap(), "--report-dir", dir]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = read_report(tmp.path(), "fixture-pass");
    let ids: Vec<String> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| format!("{}/{}", c["suite"].as_str().unwrap(), c["name"].as_str().unwrap()))
        .collect();
    let mut expected = Vec::new();
    for name in ["algebra", "dirac-triad", "bilinears"] {
        let info = SUITES.iter().find(|s| s.name == name).unwrap();
        expected.extend(info.checks.iter().map(|c| format!("{name}/{c}")));
    }
    assert_eq!(ids, expected);
    assert_eq!(report["passed"], true);
    assert_eq!(report["summary"]["total"], expected.len());
}

#[test]
fn failing_residual_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let out = verify(&["run", fixture("unit-spinor.json").to_str().unwrap(), "--report-dir", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = read_report(tmp.path(), "fixture-unit-spinor");
    assert_eq!(report["passed"], false);
    let failed: Vec<&str> =
        report["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failed, ["residual_dhe", "residual_decl", "residual_complex_ideal", "residual_covariant"]);
}

#[test]
fn expected_residual_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = verify(&["run", fixture("unit-spinor-diagnostic.json").to_str().unwrap(), "--report-dir", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn configuration_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let negative = fixture("negative-tolerance.json");
    let cases: [&[&str]; 4] = [
        &["run", negative.to_str().unwrap(), "--report-dir", dir],
        &["run", "minkowski-plane-wave", "--suite", "no-such-suite", "--report-dir", dir],
        &["run", "does-not-exist.json", "--report-dir", dir],
        &["run", "minkowski-plane-wave", "--grid", "1", "--report-dir", dir],
    ];
    for args in cases {
        let out = verify(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(std::fs::read_dir(tmp.path()).unwrap().count(), 0, "no report on a configuration error");
}

#[test]
fn overrides_reach_the_report() {
    let tmp = tempfile::tempdir().unwrap();
    let out = verify(&[
        "run",
        "minkowski-plane-wave",
        "--suite",
        "bilinears",
        "--grid",
        "3",
        "--seed",
        "42",
        "--report-dir",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_report(tmp.path(), "minkowski-plane-wave");
    assert_eq!(report["seed"], 42);
    assert_eq!(report["grid"], 3);
    assert_eq!(report["suites"], serde_json::json!(["bilinears"]));
}

#[test]
fn different_seeds_change_the_measurements() {
    let tmp = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for seed in ["1", "2"] {
        let dir = tmp.path().join(seed);
        let out = verify(&["run", "minkowski-plane-wave", "--suite", "algebra", "--seed", seed, "--report-dir", dir.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        reports.push(read_report(&dir, "minkowski-plane-wave"));
    }
    assert_ne!(reports[0]["checks"], reports[1]["checks"]);
}
