use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tal"))
        .args(args)
        .env_remove("TAL_ELEMENT_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

const DYCK2: &str = r#"{
  "states": 4,
  "alphabet": ["a", "b"],
  "init": 0,
  "finals": [0],
  "delta": {
    "0": {"a": 1, "b": 3},
    "1": {"a": 2, "b": 0},
    "2": {"a": 3, "b": 1},
    "3": {"a": 3, "b": 3}
  }
}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn eval_at_end_and_at_position() {
    let out = tal(&["eval", "--formula", "Y a", "--string", "ba"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["accepts"], true);

    let out = tal(&["eval", "--formula", "Y a", "--string", "ab", "--position", "2"]);
    assert_eq!(json(&out)["holds"], true);

    // Atoms are false at the end-of-string position.
    let out = tal(&["--format", "text", "eval", "--formula", "a", "--string", "a"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "reject");
}

#[test]
fn depth_counts_bounded_lookback_once() {
    let out = tal(&["depth", "--formula", "Y^3 (a & P b)"]);
    assert_eq!(json(&out)["operator_depth"], 2);
}

#[test]
fn dfa_config_reports_dyck_witness_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "dyck2.json", DYCK2);
    let out = tal(&["dfa-config", "--dfa", &path]);
    assert_eq!(out.status.code(), Some(1));
    let w = &json(&out)["witness"];
    assert_eq!(w["q"], 0);
    assert_eq!(w["q_prime"], 1);
    assert_eq!(w["u"], "a");
    assert_eq!(w["v"], "b");
    assert_eq!(w["x"], "ab");
}

#[test]
fn dfa_classify_benchmark() {
    let out = tal(&["dfa-classify", "--benchmark", "dyck-depth-2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["definite"], "no");
    assert_eq!(v["yptl_definable"], "no");
    assert_eq!(v["star_free"], "yes");
}

#[test]
fn element_budget_exhaustion_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "dyck2.json", DYCK2);
    let out = Command::new(env!("CARGO_BIN_EXE_tal"))
        .args(["semigroup", "--dfa", &path])
        .env("TAL_ELEMENT_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(tal(&["eval", "--formula", "a &", "--string", "a"]).status.code(), Some(2));
    assert_eq!(tal(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(tal(&["dfa-minimize", "--dfa", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn to_dfa_then_minimize_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("raw.json");
    let out = tal(&["to-dfa", "--formula", "P (b & Y a)", "--alphabet", "ab", "--out", raw.to_str().unwrap()]);
    assert!(out.status.success());
    let out = tal(&["dfa-minimize", "--dfa", raw.to_str().unwrap()]);
    assert_eq!(json(&out)["states"], 3);
}

#[test]
fn compile_run_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("model.json");
    let m = model.to_str().unwrap();
    let out = tal(&["compile", "--formula", "P (b & Y a)", "--alphabet", "ab", "--out", m]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = json(&out);
    assert_eq!(summary["census"]["global_heads"], 1);
    assert_eq!(summary["census"]["local_heads"], serde_json::json!([1]));

    assert_eq!(json(&tal(&["run-model", "--model", m, "--string", "bbab"]))["accepts"], true);
    assert_eq!(json(&tal(&["run-model", "--model", m, "--string", "bba"]))["accepts"], false);

    let out = tal(&["verify", "--model", m, "--formula", "P (b & Y a)", "--exhaustive-len", "6", "--spot-count", "10"]);
    assert!(out.status.success());
    let out = tal(&["verify", "--model", m, "--formula", "P (a & Y b)", "--exhaustive-len", "4", "--spot-count", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn gen_data_writes_manifest_and_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ends-a.jsonl");
    let out = tal(&[
        "gen-data", "--language", "ends-a", "--lengths", "3", "--per-length", "8", "--seed", "1",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let manifest: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(manifest["type"], "manifest");
    assert_eq!(manifest["records"], 8);
    let records: Vec<Value> = lines.map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 8);
    let positives: Vec<&Value> = records.iter().filter(|r| r["label"] == 1).collect();
    assert_eq!(positives.len(), 4);
    assert!(positives.iter().all(|r| r["s"].as_str().unwrap().ends_with('a')));
}

#[test]
fn masks_export_matches_window_rule() {
    let out = tal(&["masks", "--kind", "local", "--k", "2", "--len", "4"]);
    let m = json(&out)["matrix"].clone();
    assert_eq!(m, serde_json::json!([[0, 0, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0], [0, 1, 1, 0]]));
    assert_eq!(tal(&["masks", "--kind", "local", "--len", "4"]).status.code(), Some(2));
}

#[test]
fn theorem_suite_single_and_unknown() {
    let out = tal(&["theorem-suite", "--name", "precision"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);
    assert_eq!(tal(&["theorem-suite", "--name", "nope"]).status.code(), Some(2));
}

#[test]
fn benchmark_list_has_eight_languages() {
    let v = json(&tal(&["benchmark-list"]));
    assert_eq!(v.as_array().unwrap().len(), 8);
    assert_eq!(v[0]["id"], "ends-a");
    assert_eq!(v[0]["formula"], "Y a");
}
