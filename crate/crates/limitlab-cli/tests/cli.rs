//! End-to-end checks on the installed binary: exit codes, artifact
//! placement, and diagnostics that name the offending field.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn limitlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_limitlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("config.json");
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn run_simulate_succeeds_and_prints_wall_clock() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{
            "experiment": "simulate",
            "alphabet": "a",
            "target": {"kind": "pattern", "pattern": "a+"},
            "learner": {"kind": "range"},
            "metric": {"kind": "counting", "L_inf": {"kind": "pattern", "pattern": "a+"}},
            "text": {"kind": "canonical"},
            "horizon": 50
        }"#,
    );
    let out_dir = dir.path().join("artifacts");
    let output = limitlab(&["run", &config, "--out", out_dir.to_str().unwrap()]);
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("elapsed:"), "wall clock belongs on stdout, got: {stdout}");
    assert!(out_dir.join("trace.csv").exists());
    assert!(out_dir.join("report.txt").exists());
    let report = fs::read_to_string(out_dir.join("report.txt")).unwrap();
    assert!(!report.contains("elapsed"), "artifacts must stay time-free");
}

#[test]
fn negative_verdict_still_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{
            "experiment": "telltale-check",
            "alphabet": "a",
            "family": {
                "schema": {"max_words": 2, "max_len": 3},
                "extras": [{"kind": "pattern", "pattern": "a+"}]
            }
        }"#,
    );
    let out_dir = dir.path().join("artifacts");
    let output = limitlab(&["run", &config, "--out", out_dir.to_str().unwrap()]);
    assert!(output.status.success(), "NOT_LEARNABLE is a completed verdict");
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("NOT_LEARNABLE"), "got: {stdout}");
}

#[test]
fn unknown_field_fails_and_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{
            "experiment": "simulate",
            "alphabet": "a",
            "target": {"kind": "pattern", "pattern": "a+"},
            "learner": {"kind": "range", "typo_field": 3},
            "metric": {"kind": "exact"},
            "text": {"kind": "canonical"},
            "horizon": 5
        }"#,
    );
    let output = limitlab(&["run", &config, "--out", dir.path().join("x").to_str().unwrap()]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("typo_field"), "diagnostic must name the field, got: {stderr}");
}

#[test]
fn zero_epsilon_fails_and_names_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{
            "experiment": "locking-search",
            "alphabet": "a",
            "target": {"kind": "finite", "words": ["a"]},
            "learner": {"kind": "range"},
            "metric": {"kind": "exact"},
            "epsilon": "0/1"
        }"#,
    );
    let output = limitlab(&["run", &config, "--out", dir.path().join("x").to_str().unwrap()]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("epsilon"), "got: {stderr}");
}

#[test]
fn missing_file_fails_with_path_in_message() {
    let output = limitlab(&["run", "/nonexistent/nowhere.json"]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("nowhere.json"), "got: {stderr}");
}

#[test]
fn list_prints_the_catalog() {
    let output = limitlab(&["list"]);
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    for needle in ["learners:", "metrics:", "texts:", "chains:", "experiments:"] {
        assert!(stdout.contains(needle), "missing {needle} in: {stdout}");
    }
}
