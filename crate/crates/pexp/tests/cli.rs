//! End-to-end tests of the `pexp` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pexp"))
        .args(args)
        .output()
        .expect("pexp runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(report: &Value) {
    let validator = jsonschema::validator_for(&schema()).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

const SMALL_MAIN: &[&str] = &["verify", "--suite", "main_theorem", "--k-max", "2", "--N-max", "2", "--samples", "5"];

#[test]
fn exact_prints_partition_number() {
    let out = pexp(&["exact", "--n", "10"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "42\n");
    let out = pexp(&["exact", "--n", "100", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["p"], "190569292");
    let out = pexp(&["exact", "--n", "5", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,p\n5,7\n");
}

#[test]
fn coeffs_report_cutoff_and_error_constant() {
    let out = pexp(&["coeffs", "--kind", "ratio", "--k", "1", "--N", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cutoff"], 529);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
    assert!(v["coefficients"][0].as_str().unwrap().starts_with("1"));
    assert!(v["error_constant"].as_str().unwrap().starts_with("118.508"));

    let out = pexp(&["coeffs", "--kind", "inverse", "--N", "2"]);
    let text = stdout(&out);
    assert!(text.contains("valid for n >= 40"), "{text}");
    let out = pexp(&["coeffs", "--kind", "shift", "--k", "1", "--N", "1"]);
    assert!(stdout(&out).contains("valid for n > 529"));
}

#[test]
fn approx_evaluates_above_cutoff_only() {
    let out = pexp(&["approx", "--n", "1000", "--k", "1", "--N", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 1000);
    assert!(v["prefactor"].as_str().unwrap().starts_with("1.000"));
    let below = pexp(&["approx", "--n", "10", "--k", "1", "--N", "2"]);
    assert_eq!(below.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&below.stderr).contains("error"));
}

#[test]
fn verify_json_validates_and_passes() {
    let out = pexp(SMALL_MAIN);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&v);
    assert_eq!(v["summary"]["total"], 2 * 2 * 6);
    assert_eq!(v["summary"]["fail"], 0);
    for suite in ["log_concavity", "coefficient_oracle", "g_envelopes"] {
        let out = pexp(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_valid(&serde_json::from_str(&stdout(&out)).unwrap());
    }
}

#[test]
fn verify_is_deterministic_and_seeded() {
    let a = pexp(SMALL_MAIN);
    let b = pexp(SMALL_MAIN);
    assert_eq!(a.stdout, b.stdout);
    let mut reseeded = SMALL_MAIN.to_vec();
    reseeded.extend(["--seed", "9"]);
    assert_ne!(a.stdout, pexp(&reseeded).stdout);
}

#[test]
fn verify_csv_and_text() {
    let mut args = SMALL_MAIN.to_vec();
    args.extend(["--format", "csv"]);
    let text = stdout(&pexp(&args));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "check,N,boundary,k,n,lhs,rhs,margin,status");
    assert_eq!(lines.count(), 24);

    let mut args = SMALL_MAIN.to_vec();
    args.extend(["--format", "text"]);
    assert!(stdout(&pexp(&args)).starts_with("main_theorem: 24 cases, 24 pass"));
}

#[test]
fn tightness_profiles() {
    let out = pexp(&["tightness", "--suite", "main_theorem", "--k-max", "1", "--N-max", "1", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let ratio: f64 = row["ratio"].as_str().unwrap().parse().unwrap();
        assert!(ratio > 0.0 && ratio < 1.0);
        assert_eq!(row["flagged"], false);
    }
    let empty = pexp(&["tightness", "--suite", "main_theorem", "--k-max", "0"]);
    assert_eq!(empty.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&empty)).unwrap();
    assert!(v["rows"].as_array().unwrap().is_empty());
}

#[test]
fn errors_exit_with_status_two() {
    for args in [
        &["verify", "--suite", "bogus"][..],
        &["exact", "--n", "10", "--bits", "10"][..],
        &["coeffs", "--k", "0"][..],
        &["verify", "--suite", "shift_theorem", "--samples", "20000"][..],
        &["frobnicate"][..],
    ] {
        let out = pexp(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn cache_file_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.bin");
    let cache = path.to_str().unwrap();
    let first = pexp(&["exact", "--n", "500", "--cache", cache]);
    assert!(first.status.success());
    assert!(path.exists());
    let second = pexp(&["exact", "--n", "200", "--cache", cache]);
    assert_eq!(stdout(&second), "3972999029388\n");

    let mut with_cache = SMALL_MAIN.to_vec();
    with_cache.extend(["--cache", cache]);
    assert_eq!(pexp(&with_cache).stdout, pexp(SMALL_MAIN).stdout);
}
