use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn k3salem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3salem"))
        .args(args)
        .env_remove("K3SALEM_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn assert_no_json_numbers(v: &Value) {
    match v {
        Value::Number(n) => panic!("bare number {n} in JSON output"),
        Value::Array(a) => a.iter().for_each(assert_no_json_numbers),
        Value::Object(o) => o.values().for_each(assert_no_json_numbers),
        _ => {}
    }
}

#[test]
fn ns_build_reports_decimal_strings() {
    let out = k3salem(&["ns", "build", "--p", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_no_json_numbers(&v);
    assert_eq!(v["checks"]["det"], "-49");
    assert_eq!(v["passed"], true);
    assert_eq!(v["model"]["gram"].as_array().map(Vec::len), Some(22));
}

#[test]
fn human_output_by_default() {
    let out = k3salem(&["ns", "build", "--p", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("NS(X(3)): rank 22, det -9"));
}

#[test]
fn fibration_commands() {
    let out = k3salem(&["fibration", "find", "--p", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["configurationCounts"]["~E7"], "24");
    assert_eq!(v["fibrations"].as_array().map(Vec::len), Some(3));

    let out = k3salem(&[
        "fibration",
        "height",
        "--p",
        "11",
        "--sections",
        "P,P",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["height"], "11/2");

    let out = k3salem(&[
        "fibration",
        "height",
        "--p",
        "3",
        "--sections",
        "P',R'",
        "--json",
    ]);
    assert_eq!(json(&out)["height"], "0");

    let out = k3salem(&["fibration", "height", "--p", "3", "--sections", "P,P'"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_sections_passes() {
    let out = k3salem(&["verify", "sections", "--p", "19", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pullbackConsistent"], true);
}

#[test]
fn salem_run_schema_and_exit_codes() {
    let out = k3salem(&["salem", "run", "--p", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_no_json_numbers(&v);
    assert_eq!(v["isSalem22"], true);
    assert_eq!(v["mu"].as_array().map(Vec::len), Some(23));
    assert_eq!(v["g"][0], "67");
    assert_eq!(v["cyclotomicFactors"], Value::Array(vec![]));
    let a = v["salemNumber"].as_array().unwrap();
    assert!(a[0].as_str().unwrap().starts_with("70.1445493567"));
    assert_eq!(v["entropy"].as_array().map(Vec::len), Some(2));

    let out = k3salem(&["salem", "run", "--p", "3", "--word", "P"]);
    assert_eq!(out.status.code(), Some(3));

    let out = k3salem(&["salem", "run", "--p", "3", "--word", "X"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn preconditions_exit_one() {
    assert_eq!(
        k3salem(&["ns", "build", "--p", "13"]).status.code(),
        Some(1)
    );
    assert_eq!(
        k3salem(&["ns", "build", "--p", "15"]).status.code(),
        Some(1)
    );
    assert_eq!(k3salem(&["ns", "build"]).status.code(), Some(1));
    assert_eq!(k3salem(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(k3salem(&["--help"]).status.code(), Some(0));
}

#[test]
fn pipeline_is_deterministic_and_ordered() {
    let a = k3salem(&["pipeline", "--primes", "11,3,7", "--json", "--jobs", "3"]);
    let b = k3salem(&["pipeline", "--primes", "11,3,7", "--json", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_no_json_numbers(&v);
    let ps: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["p"].as_str().unwrap())
        .collect();
    assert_eq!(ps, ["11", "3", "7"]);
    assert_eq!(v[0]["report"]["detValue"], "-121");
    assert_eq!(v[1]["report"]["verdict"]["isSalem22"], true);
}

#[test]
fn pipeline_collects_errors() {
    let out = k3salem(&["pipeline", "--primes", "3,5", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v[0]["report"]["verdict"]["isSalem22"], true);
    assert_eq!(v[1]["error"]["kind"], "precondition");
}

#[test]
fn output_directory_from_environment() {
    let dir: PathBuf = std::env::temp_dir().join(format!("k3salem-cli-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let out = Command::new(env!("CARGO_BIN_EXE_k3salem"))
        .args(["salem", "run", "--p", "7"])
        .env("K3SALEM_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let written: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("salem-run-p7.json")).unwrap())
            .unwrap();
    assert_eq!(written["p"], "7");
    assert_eq!(written["isSalem22"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}
