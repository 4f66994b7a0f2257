use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topcube"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().expect("exit code"), v)
}

const PAIR_FAMILY: &str = r#"{"universe":{"finite":2},"sets":[[0],[1]]}"#;

#[test]
fn enumerate_two_points() {
    let (code, v) = report(&["enumerate", "--n", "2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "ok");
    assert_eq!(v["payload"]["counts"]["topologies"], 4);
    assert_eq!(v["payload"]["counts"]["families"], 16);
    assert_eq!(v["elapsed_ms"], Value::Null);
}

#[test]
fn join_axiom_certificate() {
    let (code, v) = report(&[
        "logic",
        "certify",
        "--sentence",
        "forall x. forall y. (P(x) and P(y)) -> P(x | y)",
        "--family",
        PAIR_FAMILY,
        "--json",
    ]);
    assert_eq!(code, 0);
    let n = &v["payload"]["neighborhood"];
    assert_eq!(n["pos"], json!([[0], [1]]));
    assert_eq!(n["neg"], json!([[0, 1]]));
}

#[test]
fn nontopology_from_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("nbhd.json");
    let nbhd = json!({
        "universe": "nat",
        "pos": [{"T": 0, "transient": [], "p": 2, "R": [0]}],
        "neg": [{"elems": [1, 2]}],
    });
    std::fs::write(&path, nbhd.to_string()).unwrap();
    let (code, v) = report(&[
        "witness",
        "nontopology",
        "--nbhd",
        path.to_str().unwrap(),
        "--m",
        "4",
        "--json",
    ]);
    assert_eq!(code, 0);
    let checks = v["payload"]["checks"].as_object().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.values().all(|c| c == "pass"), "{checks:?}");
    assert_eq!(v["payload"]["parts"].as_array().unwrap().len(), 4);
}

#[test]
fn set_arithmetic() {
    let (code, v) = report(&[
        "upset-eval",
        "union",
        "--a",
        r#"{"T":0,"transient":[],"p":2,"R":[0]}"#,
        "--b",
        r#"{"T":0,"transient":[],"p":2,"R":[1]}"#,
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["set"], json!({"T": 0, "transient": [], "p": 1, "R": [0]}));
    assert_eq!(v["payload"]["cardinality"], "infinite");
}

#[test]
fn domain_errors_exit_one_without_payload() {
    let lattice = r#"{"universe":{"finite":2},"sets":[[],[0],[0,1]]}"#;
    let (code, v) = report(&["witness", "lattice", "--family", lattice, "--json"]);
    assert_eq!(code, 1);
    assert_eq!(v["outcome"]["error"], "not_separable");
    assert_eq!(v["payload"], Value::Null);
}

#[test]
fn input_errors_exit_two() {
    let (code, v) = report(&[
        "logic",
        "eval",
        "--sentence",
        "forall x. P(x",
        "--family",
        PAIR_FAMILY,
        "--json",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["outcome"]["error"], "syntax");

    let (code, v) = report(&["witness", "lattice", "--family", "/no/such/file.json", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["outcome"]["error"], "validation");
}

#[test]
fn unknown_command_prints_usage() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn human_output_renders_payload() {
    let out = run(&["logic", "eval", "--sentence", "P(0)", "--family", PAIR_FAMILY]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "holds: false\nsentence: P(0)\n");
}

#[test]
fn reports_are_reproducible() {
    let args = ["suite", "acceptance", "--criterion", "8", "--seed", "3", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["payload"]["table"], json!(["criterion 8 almost_disjoint: PASS"]));
}

#[test]
fn timing_is_opt_in() {
    let (_, v) = report(&["enumerate", "--n", "1", "--json", "--timing"]);
    assert!(v["elapsed_ms"].is_u64());
}
