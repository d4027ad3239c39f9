use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use stratlab::{DoubleDigraph, Stratification};

fn stratlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stratlab")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const SAMPLE: &[&str] = &["sample", "--model", "double-alpha", "--n", "8", "--alpha1", "0.1", "--alpha2", "0.2", "--seed", "7"];

#[test]
fn sample_is_reproducible() {
    let a = stratlab(SAMPLE);
    let b = stratlab(SAMPLE);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let g: DoubleDigraph = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(g.node_count(), 8);
}

#[test]
fn stratify_hand_traced_chain() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g_b.json");
    fs::write(&path, r#"{"n":3,"r1":[[1,2],[2,3]],"r2":[]}"#).unwrap();
    let out = stratlab(&["stratify", "--in", path.to_str().unwrap(), "--root", "1"]);
    assert!(out.status.success());
    let s: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(s["height"], 2);
    assert_eq!(s["levels"], serde_json::json!([[1], [2], [3]]));
    assert_eq!(s["step_kinds"], serde_json::json!([1, 1]));
}

#[test]
fn sampled_structures_round_trip_through_stratify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let args = ["sample", "--n", "200", "--seed", "3", "--out", path.to_str().unwrap()];
    assert!(stratlab(&args).status.success());
    let text = fs::read_to_string(&path).unwrap();
    let g: DoubleDigraph = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&g).unwrap() + "\n", text);

    let out = stratlab(&["stratify", "--in", path.to_str().unwrap(), "--root", "5"]);
    assert!(out.status.success());
    let s: Stratification = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(s, stratlab::stratify(&g, 5).unwrap());
}

#[test]
fn plain_graphs_are_stratified_through_adjacency() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let args = ["sample", "--model", "gnp", "--p", "0.3", "--n", "12", "--out", path.to_str().unwrap()];
    assert!(stratlab(&args).status.success());
    let out = stratlab(&["stratify", "--in", path.to_str().unwrap()]);
    assert!(out.status.success());
    let s: Stratification = serde_json::from_slice(&out.stdout).unwrap();
    assert!(s.step_kinds().iter().all(|k| *k == stratlab::Relation::R2));
}

#[test]
fn estimate_true_is_certain() {
    let out = stratlab(&["estimate", "--sentence", "true", "--trials", "20"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::ReaderBuilder::new().from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "p_hat").unwrap();
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[col].parse::<f64>().unwrap() == 1.0));
}

#[test]
fn csv_output_gets_a_json_mirror_with_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("prob.csv");
    let out = stratlab(&[
        "estimate", "--sentence", "r2-nonempty", "--n-grid", "3,9", "--trials", "50", "--seed", "11",
        "--out", csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(fs::read_to_string(&csv_path).unwrap().starts_with("n,trials,successes,p_hat,ci_low,ci_high,sentence,seed"));
    let mirror: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("prob.json")).unwrap()).unwrap();
    assert_eq!(mirror["config"]["n_grid"], serde_json::json!([3, 9]));
    assert_eq!(mirror["config"]["master_seed"], 11);
    assert_eq!(mirror["rows"].as_array().unwrap().len(), 2);
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("cfg.json");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"model": {"kind": "double-alpha", "alpha1": 0.1, "alpha2": 0.2}, "n_grid": [16, 32], "trials": 5, "master_seed": 1}"#,
    );
    let out = stratlab(&["survey-heights", "--config", &cfg, "--trials", "3", "--roots", "sample:2", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["trials"], 3);
    assert_eq!(doc["config"]["root_policy"], "sample:2");
    assert_eq!(doc["config"]["slack_c"], 4.0);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn invalid_configs_exit_one_with_itemized_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"model": {"kind": "double-alpha", "alpha1": 0.2, "alpha2": 0.1}, "n_grid": [], "trials": 5, "master_seed": 1}"#,
    );
    let out = stratlab(&["verify-bounds", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("alpha1 < alpha2"), "{err}");
    assert!(err.contains("n_grid"), "{err}");

    let missing = stratlab(&["estimate", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    for args in [&["frobnicate"][..], &["sample", "--n", "4", "--bogus"], &["sample"], &["estimate", "--n-grid", "a,b"]] {
        let out = stratlab(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"), "{args:?}");
    }
    assert_eq!(stratlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn model_mismatch_is_a_config_error() {
    let out = stratlab(&["verify-bounds", "--model", "gnp", "--p", "0.1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = stratlab(&["estimate", "--n-grid", "4,8"]);
    assert_eq!(out.status.code(), Some(1), "sentence is required");
}

#[test]
fn failed_assertions_exit_three() {
    let out = stratlab(&["estimate", "--sentence", "true", "--n-grid", "8", "--trials", "5", "--assert"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[FAIL]"));

    let out = stratlab(&["survey-valency", "--n-grid", "4096", "--trials", "5", "--assert"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn thread_count_does_not_change_results() {
    let base = ["convergence", "--sentence", "height-parity-even", "--n-grid", "32,64,128", "--trials", "40"];
    let one = stratlab(&[&base[..], &["--threads", "1"]].concat());
    let four = stratlab(&[&base[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn run_reports_help_as_success() {
    assert_eq!(stratlab_cli::run(["stratlab", "--version"]), stratlab_cli::EXIT_OK);
    assert_eq!(stratlab_cli::run(["stratlab", "sample", "--n", "x"]), stratlab_cli::EXIT_USAGE);
}
