use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;

fn symvol(args: &[&str]) -> Output {
    symvol_env(args, &[])
}

fn symvol_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_symvol"));
    cmd.args(args).env_remove("SYMVOL_MAX_HALF_EDGES");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(args: &[&str]) -> (Vec<String>, i32) {
    let o = symvol(args);
    (stdout(&o).lines().map(str::to_string).collect(), o.status.code().unwrap())
}

fn schema() -> &'static Value {
    static S: OnceLock<Value> = OnceLock::new();
    S.get_or_init(|| serde_json::from_str(include_str!("../schema/output.schema.json")).unwrap())
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = symvol(&all);
    let doc: Value = serde_json::from_str(&stdout(&o)).expect("stdout is JSON");
    let validator = jsonschema::validator_for(schema()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    (doc, o.status.code().unwrap())
}

#[test]
fn volume_examples() {
    assert_eq!(lines(&["volume", "-g", "1", "-n", "1"]), (vec!["1/48 * L1^2".to_string()], 0));
    let (out, code) = lines(&["volume", "-g", "0", "-n", "4", "--eval", "3,4,5,6"]);
    assert_eq!(code, 0);
    assert_eq!(out.last().unwrap(), "43");
    let (out, code) = lines(&["volume", "-g", "0", "-n", "4", "--eval", "3,4,5,6", "--method", "dvv"]);
    assert_eq!((out.last().unwrap().as_str(), code), ("43", 0));
}

#[test]
fn unstable_volume_is_zero_with_warning() {
    let o = symvol(&["volume", "-g", "0", "-n", "2"]);
    assert_eq!(stdout(&o), "0\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cell_integration_from_the_command_line() {
    let (out, code) = lines(&["volume", "-g", "1", "-n", "1", "--eval", "2", "--method", "brute"]);
    assert_eq!((out, code), (vec!["1/12".to_string()], 0));
    let (_, code) = lines(&["volume", "-g", "1", "-n", "1", "--method", "brute"]);
    assert_eq!(code, 2);
}

#[test]
fn intersect_examples() {
    assert_eq!(lines(&["intersect", "-g", "1", "-d", "1"]).0, vec!["1/24"]);
    assert_eq!(lines(&["intersect", "-g", "0", "-d", "0,0,0"]).0, vec!["1"]);
    assert_eq!(lines(&["intersect", "-g", "1", "-d", "2"]).0, vec!["0 (dimension mismatch)"]);
}

#[test]
fn correlator_examples() {
    assert_eq!(lines(&["correlator", "-g", "1", "-n", "1"]), (vec!["1/8 * z1^-4".to_string()], 0));
    let (out, code) = lines(&["correlator", "-g", "0", "-n", "4", "--path", "both"]);
    assert_eq!((out.last().unwrap().as_str(), code), ("MATCH", 0));
    assert_eq!(symvol(&["correlator", "-g", "0", "-n", "1"]).status.code(), Some(2));
}

#[test]
fn graphs_examples() {
    let (doc, _) = json(&["graphs", "-g", "1", "-n", "1"]);
    let auts: Vec<u64> = doc["payload"]["records"].as_array().unwrap().iter().map(|r| r["aut"].as_u64().unwrap()).collect();
    assert_eq!(auts, vec![4, 6]);
    assert_eq!(json(&["graphs", "-g", "0", "-n", "3"]).0["payload"]["records"].as_array().unwrap().len(), 7);
    let (doc, _) = json(&["graphs", "-g", "0", "-n", "3", "--trivalent"]);
    let records = doc["payload"]["records"].as_array().unwrap();
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| r["trivalent"] == Value::Bool(true)));
}

#[test]
fn half_edge_limit_comes_from_the_environment() {
    let o = symvol_env(&["graphs", "-g", "0", "-n", "4"], &[("SYMVOL_MAX_HALF_EDGES", "6")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SYMVOL_MAX_HALF_EDGES"));
    let o = symvol_env(&["graphs", "-g", "0", "-n", "3"], &[("SYMVOL_MAX_HALF_EDGES", "6")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_filters_by_complexity_and_rejects_zero() {
    let (doc, code) = json(&["verify", "-c", "1", "--seed", "5"]);
    assert_eq!(code, 0);
    for check in doc["payload"]["checks"].as_array().unwrap() {
        let key = (check["g"].as_u64().unwrap(), check["n"].as_u64().unwrap());
        assert!(key == (0, 3) || key == (1, 1));
        assert_eq!(check["passed"], Value::Bool(true));
    }
    assert_eq!(symvol(&["verify", "-c", "0"]).status.code(), Some(2));
}

#[test]
fn verify_to_complexity_three_passes() {
    let (out, code) = lines(&["verify", "-c", "3"]);
    assert_eq!(code, 0, "{}", out.join("\n"));
    assert!(out.iter().skip(1).take(out.len() - 2).all(|l| l.starts_with("PASS")));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(symvol(&["volume", "-g", "1"]).status.code(), Some(2));
    assert_eq!(symvol(&["volume", "-g", "1", "-n", "1", "--method", "nope"]).status.code(), Some(2));
    assert_eq!(symvol(&["volume", "-g", "1", "-n", "2", "--eval", "1"]).status.code(), Some(2));
    assert_eq!(symvol(&["volume", "-g", "1", "-n", "1", "--eval", "x"]).status.code(), Some(2));
    assert_eq!(symvol(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn every_kind_validates_against_the_schema() {
    json(&["volume", "-g", "1", "-n", "2", "--eval", "1/2,3"]);
    json(&["--approx", "volume", "-g", "0", "-n", "4"]);
    json(&["volume", "-g", "0", "-n", "2"]);
    json(&["volume", "-g", "0", "-n", "4", "--eval", "3,4,5,6", "--method", "brute"]);
    json(&["intersect", "-g", "2", "-d", "4,0"]);
    json(&["--approx", "intersect", "-g", "1", "-d", "1"]);
    json(&["correlator", "-g", "1", "-n", "2", "--path", "both"]);
    json(&["graphs", "-g", "1", "-n", "1", "--trivalent"]);
    json(&["verify", "-c", "1"]);
}

#[test]
fn rationals_are_strings() {
    let (doc, _) = json(&["volume", "-g", "1", "-n", "1", "--eval", "2"]);
    assert_eq!(doc["payload"]["polynomial"]["terms"][0]["coefficient"]["value"], "1/48");
    assert_eq!(doc["payload"]["evaluation"]["value"]["value"], "1/12");
    assert!(doc["payload"]["evaluation"]["value"].get("approx").is_none());
}

#[test]
fn approx_is_marked() {
    let (out, _) = lines(&["--approx", "intersect", "-g", "1", "-d", "1"]);
    assert_eq!(out[0], "1/24");
    assert!(out[1].starts_with("~ 0.041666"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "graphs", "-g", "0", "-n", "4", "--trivalent"][..],
        &["verify", "-c", "2", "--seed", "9"],
        &["--approx", "volume", "-g", "2", "-n", "1"],
    ] {
        assert_eq!(symvol(args).stdout, symvol(args).stdout, "{args:?}");
    }
}

#[test]
fn schema_rejects_float_rationals() {
    let (mut doc, _) = json(&["intersect", "-g", "1", "-d", "1"]);
    doc["payload"]["value"]["value"] = serde_json::json!(0.041666);
    assert!(!jsonschema::is_valid(schema(), &doc));
}
