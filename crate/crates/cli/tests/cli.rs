use std::process::{Command, Output};

use serde_json::Value;

fn qmodular(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmodular"))
        .arg("--no-timestamp")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qmodular(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn qrat_reports_the_pair() {
    let doc = json(&["qrat", "5/12"]);
    assert_eq!(doc["meta"]["command"], "qrat");
    assert!(doc["meta"].get("timestamp").is_none());
    let den = doc["result"]["den"].as_str().unwrap();
    assert_eq!(den, "q^5 + 2*q^4 + 3*q^3 + 3*q^2 + 2*q + 1");
}

#[test]
fn qrat_jones_of_an_integer() {
    let doc = json(&["qrat", "3/1", "--jones"]);
    assert_eq!(doc["result"]["jones"], "q^3 + q^2 + 1");
}

#[test]
fn qrat_accepts_zero_and_negatives() {
    json(&["qrat", "0/1"]);
    json(&["qrat", "-7/3"]);
}

#[test]
fn certify_verdicts() {
    let verdict = |n: &str| json(&["certify", "--zeta", n])["result"]["verdict"].as_str().unwrap().to_string();
    assert_eq!(verdict("4"), "finite");
    assert_eq!(verdict("6"), "infinite");
    assert_eq!(verdict("7"), "infinite");
}

#[test]
fn group_cap_exceeded_is_not_an_error() {
    let doc = json(&["group", "--zeta", "6", "--cap", "500"]);
    assert_eq!(doc["result"]["verdict"], "CapExceeded");
    assert_eq!(doc["result"]["cap"], 500);
}

#[test]
fn text_format() {
    let out = qmodular(&["--format", "text", "group", "--zeta", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: 12"), "{text}");
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = qmodular(&["--out", path.to_str().unwrap(), "group", "--zeta", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["result"]["order"], 72);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["qrat", "5/0"][..],
        &["qrat", "abc"],
        &["group", "--zeta", "0"],
        &["scan", "--property", "nonsense"],
        &["frobnicate"],
        &["verify", "/nonexistent/cert.json"],
    ] {
        assert_eq!(qmodular(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn invalid_thread_count_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_qmodular"))
        .env("QMODULAR_THREADS", "many")
        .args(["qrat", "5/2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = qmodular(&["--out", path.to_str().unwrap(), "certify", "--zeta", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(qmodular(&["verify", path.to_str().unwrap()]).status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["result"]["order"] = Value::from(73);
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(qmodular(&["verify", path.to_str().unwrap()]).status.code(), Some(1));
}
