use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use symop::symfunc::inner;
use symop::{Coeff, SymFunc};

fn symop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = symop(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn apply_examples() {
    assert_eq!(ok(&["apply", "D(1)", "1"]).trim(), "1");
    assert_eq!(ok(&["apply", "pmul(1)", "p_1"]).trim(), "p_{(1,1)}");
    let got = SymFunc::parse(&ok(&["apply", "U(0,1)", "p_1"])).unwrap();
    let (qi, ti) = (Coeff::q().inverse().unwrap(), Coeff::t().inverse().unwrap());
    let ev = &(&qi + &ti) - &(&qi * &ti);
    let expect = SymFunc::p(1).scale(&(&ev / &Coeff::beta(1).unwrap()));
    assert_eq!(got, expect);
}

#[test]
fn apply_reads_stdin_and_writes_json() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_symop"))
        .args(["--output", "json", "apply", "padj(1)"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"p_{(1,1)}").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let f = SymFunc::from_json(&stdout(&out)).unwrap();
    // p_1^dagger p_1^2 = 2 <p_1, p_1> p_1
    let norm = &Coeff::from(-2) / &Coeff::beta(1).unwrap();
    assert_eq!(f, SymFunc::p(1).scale(&norm));
}

#[test]
fn error_exit_codes() {
    assert_eq!(symop(&["apply", "X(1)", "1"]).status.code(), Some(2));
    assert_eq!(symop(&["apply", "D(1)", "p_"]).status.code(), Some(2));
    assert_eq!(symop(&["--max-degree", "2", "apply", "pmul(3)", "p_1"]).status.code(), Some(3));
    assert_eq!(symop(&["--max-degree", "2", "macdonald", "3"]).status.code(), Some(3));
    assert_eq!(symop(&["shuffle", "check", "n=2; nonsense"]).status.code(), Some(2));
}

fn macdonald_json(args: &[&str]) -> Vec<SymFunc> {
    let v: Value = serde_json::from_str(&ok(args)).unwrap();
    v["basis"].as_array().unwrap().iter().map(|e| SymFunc::from_json_value(&e["polynomial"]).unwrap()).collect()
}

#[test]
fn macdonald_examples() {
    assert_eq!(macdonald_json(&["--output", "json", "macdonald", "0"]), vec![SymFunc::one()]);
    assert_eq!(macdonald_json(&["--output", "json", "macdonald", "1"]), vec![SymFunc::p(1)]);
    let two = macdonald_json(&["--output", "json", "macdonald", "2"]);
    assert_eq!(two.len(), 2);
    assert!(inner(&two[0], &two[1]).is_zero());
}

#[test]
fn verify_examples() {
    let out = ok(&["verify", "orthogonality", "3"]);
    assert!(out.contains("PASS orthogonality"));
    let out = ok(&["verify", "eigen", "1"]);
    assert!(out.contains("orientation: inverted"), "{out}");
    let v: Value = serde_json::from_str(&ok(&["--output", "json", "verify", "relations", "0"])).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert!(v["suites"][0]["checks"].as_array().unwrap().iter().all(|c| c["degree"] == 0));
    assert_eq!(symop(&["--max-degree", "1", "verify", "eigen", "2"]).status.code(), Some(3));
}

#[test]
fn verify_fails_under_the_wrong_orientation() {
    let o = symop(&["--orientation", "direct", "verify", "orthogonality", "1"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["--output", "json", "verify", "adjoint", "2"];
    assert_eq!(ok(&args), ok(&args));
    let args = ["macdonald", "3"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn warm_cache_gives_identical_results() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bases.json");
    let p = path.to_str().unwrap();
    let cold = ok(&["--cache", p, "--output", "json", "macdonald", "3"]);
    assert!(path.exists());
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(file["bases"]["inverted"]["3"].is_array());
    let warm = ok(&["--cache", p, "--output", "json", "macdonald", "3"]);
    assert_eq!(cold, warm);
    assert_eq!(cold, ok(&["--output", "json", "macdonald", "3"]));
    let v = ok(&["--cache", p, "verify", "eigen", "3"]);
    assert!(v.contains("PASS eigen"));
}

#[test]
fn shuffle_commands() {
    let out = ok(&["shuffle", "word", "0", "0"]);
    assert!(out.contains("in shuffle algebra: true"));
    let out = ok(&["shuffle", "pmn", "-1", "2"]);
    assert!(out.contains("in shuffle algebra: true"));
    let elem = out.lines().next().unwrap();
    assert!(ok(&["shuffle", "check", elem]).contains("in shuffle algebra: true"));
    let out = ok(&["shuffle", "relations", "2", "-1", "2", "1"]);
    assert!(out.starts_with("4 words, 1 relations"), "{out}");
    let out = ok(&["shuffle", "ribbon", "1", "1", "2", "1"]);
    assert!(out.contains("in shuffle algebra: true"));
    let v: Value = serde_json::from_str(&ok(&["--output", "json", "shuffle", "pmn", "1", "3"])).unwrap();
    assert_eq!(v["membership"]["wheel_ok"], Value::Bool(true));
}
