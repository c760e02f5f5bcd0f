use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn iquantum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iquantum")).args(args).output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn without_timing(mut v: Vec<Value>) -> Vec<Value> {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("millis");
                m.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    v.iter_mut().for_each(strip);
    v
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("iquantum-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn unity_suite_passes() {
    let out = iquantum(&["verify", "unity", "--ell", "3,5,7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v.len(), 4);
    assert_eq!(v[3]["kind"], "summary");
    assert_eq!(v[3]["passed"], 3);
}

#[test]
fn kernel_suite_on_catalog() {
    let out = iquantum(&["verify", "kernel"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(lines(&out).iter().filter(|v| v["kind"] == "check").all(|v| v["pass"] == true));
}

#[test]
fn invariants_report() {
    let out = iquantum(&["invariants", "--diagram", "quasisplit_a2", "--ell", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    let row = &v[0]["report"]["degrees"][0];
    assert_eq!(row["degree"], 3);
    assert_eq!(v[0]["report"]["invariants"]["n"], 3);
    assert_eq!(v[0]["report"]["invariants"]["n0"], 1);

    let out = iquantum(&["invariants", "--diagram", "split_a1"]);
    let v = lines(&out);
    let degrees = v[0]["report"]["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 3);
    assert!(degrees.iter().all(|r| r["degree"] == 1));
}

#[test]
fn word_override() {
    let out = iquantum(&["invariants", "--diagram", "quasisplit_a2", "--ell", "3", "--word", "2,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["report"]["word"]["relative"], serde_json::json!([1, 0, 1]));
    assert_eq!(iquantum(&["invariants", "--diagram", "quasisplit_a2", "--word", "1,2"]).status.code(), Some(2));
    assert_eq!(iquantum(&["verify", "unity", "--word", "1"]).status.code(), Some(2));
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(iquantum(&["verify", "frobenius", "--ell", "4"]).status.code(), Some(2));
    assert_eq!(iquantum(&["verify", "unity", "--ell", "2"]).status.code(), Some(2));
    assert_eq!(iquantum(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(iquantum(&["verify", "braid", "--diagram", "split_b2"]).status.code(), Some(2));
    assert_eq!(iquantum(&["verify", "smalldim", "--diagram", "split_a2"]).status.code(), Some(2));
    assert_eq!(iquantum(&["invariants", "--diagram", "no_such_thing"]).status.code(), Some(2));

    let bad = scratch("tau.json", r#"{"type": "A2", "tau": {"1": 1, "2": 1}}"#);
    let out = iquantum(&["invariants", "--diagram", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("involution"));
}

#[test]
fn diagram_file_and_out_path() {
    let src = scratch("b2.json", r#"{"type": "B2", "black": [2]}"#);
    let dest = scratch("report.jsonl", "");
    let out = iquantum(&["verify", "frobenius", "--diagram", src.to_str().unwrap(), "--out", dest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&dest).unwrap();
    let v: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(v[0]["case"].as_str().unwrap().contains("b2"));
    assert_eq!(v.last().unwrap()["pass"], true);
}

#[test]
fn output_is_deterministic_and_parallel_safe() {
    let a = lines(&iquantum(&["verify", "frobenius"]));
    let b = lines(&iquantum(&["verify", "frobenius", "--jobs", "4"]));
    assert_eq!(without_timing(a), without_timing(b));
}
