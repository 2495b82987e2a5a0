use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cherednik"))
        .args(args)
        .env_remove("CHEREDNIK_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn hilbert_text() {
    let out = run(&["hilbert", "--r", "2", "--p", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1 2 2 2 1");
}

#[test]
fn hilbert_and_flagmaj_agree() {
    for (r, p, n) in [("3", "3", "3"), ("2", "1", "3"), ("4", "2", "2")] {
        let h = run(&["hilbert", "--r", r, "--p", p, "--n", n]);
        let f = run(&["flagmaj", "--r", r, "--p", p, "--n", n]);
        assert_eq!(stdout(&h), stdout(&f));
    }
}

#[test]
fn verify_type_d2() {
    let out = run(&["verify", "--r", "2", "--p", "2", "--n", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["decomposition"]["cardinality"], 4);
    assert_eq!(v["passed"], true);
    assert_eq!(v["level"], "quick");
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 6] = [
        &["hilbert", "--p", "3", "--r", "4", "--n", "2"],
        &["jack", "--r", "2", "--n", "2", "--mu", "0,1,2"],
        &["jack", "--r", "2", "--n", "2", "--mu", "0,1", "--kappa", "1/0"],
        &["jack", "--r", "2", "--n", "2", "--mu", "0,1", "--c0", "0.5"],
        &["jack", "--r", "3", "--p", "3", "--n", "2", "--mu", "0,1", "--c", "1=1/2"],
        &["basis", "--r", "2", "--n", "2", "--kappa", "1"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = run(&["bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn genericity_failure_exits_1() {
    let out = run(&["verify", "--r", "2", "--n", "2", "--c0", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vanishes"));
}

#[test]
fn jack_constant() {
    let out = run(&["jack", "--r", "2", "--p", "1", "--n", "2", "--mu", "0,0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["text"], "1");
    assert_eq!(v["weight"]["beta"], serde_json::json!([0, 0]));
    assert_eq!(v["params"]["c0"], "1/3");
    assert_eq!(v["seed"], Value::Null);
}

#[test]
fn json_is_byte_stable() {
    let args = ["basis", "--r", "3", "--p", "1", "--n", "2", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn seed_is_recorded_and_changes_parameters() {
    let args = ["jack", "--r", "3", "--n", "2", "--mu", "0,1", "--format", "json"];
    let seeded = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_cherednik")).args(args).env("CHEREDNIK_SEED", seed).output().unwrap()
    };
    let a = json(&seeded("11"));
    assert_eq!(a["seed"], 11);
    assert_eq!(a, json(&seeded("11")));
    assert_ne!(a["params"], json(&run(&args))["params"]);
    assert_eq!(seeded("nope").status.code(), Some(2));
}

#[test]
fn apply_commutator() {
    // no reflections for G(1,1,1), so y1 x1 . 1 = kappa
    let yx = run(&["apply", "--r", "1", "--n", "1", "--kappa", "1", "--op", "x1", "--op", "y1", "--mu", "0"]);
    assert_eq!(yx.status.code(), Some(0));
    assert_eq!(stdout(&yx).trim(), "1");
    let out = run(&["apply", "--r", "2", "--n", "2", "--op", "s1", "--mu", "2,1"]);
    assert_eq!(stdout(&out).trim(), "x1*x2^2");
    let out = run(&["apply", "--r", "2", "--n", "2", "--op", "q1", "--mu", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn apply_round_trips_json_polynomials() {
    let first = run(&["apply", "--r", "3", "--n", "2", "--op", "zeta1", "--mu", "1,1", "--format", "json"]);
    let poly = json(&first)["output"].to_string();
    let back = run(&["apply", "--r", "3", "--n", "2", "--op", "zeta1", "--op", "zeta1", "--poly", &poly]);
    assert_eq!(stdout(&back).trim(), "x1*x2");
}

#[test]
fn relations_and_descents() {
    let out = run(&["relations", "--r", "4", "--p", "2", "--n", "2", "--kappa", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    let out = run(&["descents", "--r", "2", "--n", "2", "--format", "json"]);
    assert_eq!(json(&out)["classes"].as_array().unwrap().len(), 6);
}
