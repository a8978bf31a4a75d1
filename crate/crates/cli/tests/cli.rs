use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itercurves")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn orbit_of_minus_two() {
    let v = json(&["orbit", "--c", "-2", "--n", "5"]);
    assert_eq!(v["schema"], "itercurves/1");
    assert_eq!(v["command"], "orbit");
    assert_eq!(v["result"]["values"], serde_json::json!(["-2", "2", "2", "2", "2"]));
}

#[test]
fn stages_for_three() {
    let v = json(&["stages", "--c", "3", "--n", "4"]);
    let stages = v["result"]["stages"].as_array().unwrap();
    assert_eq!(stages[2]["status"], "non_maximal");
    assert_eq!(stages[2]["labels"], serde_json::json!(["f^2(0)"]));
    assert_eq!(stages[3]["status"], "unknown");
}

#[test]
fn false_verification_still_exits_zero() {
    let v = json(&["verify", "chebyshev", "--n", "2", "--p", "5"]);
    assert_eq!(v["result"]["matches"], true);
    let v = json(&["verify", "chebyshev", "--n", "1", "--p", "3"]);
    assert_eq!(v["result"]["matches"], false);
    assert_eq!(v["result"]["charpoly"]["charpoly"]["coeffs"], serde_json::json!(["1", "-2", "3"]));
}

#[test]
fn math_errors_exit_one_with_code() {
    let out = run(&["--json", "charpoly", "--family", "c", "--c", "0", "--n", "2", "--p", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "NotSquarefree");

    let out = run(&["count", "--family", "f2", "--p", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotPrime"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["orbit", "--c", "x", "--n", "3"][..],
        &["curve", "--family", "c", "--n", "2"],
        &["scan", "--n", "3"],
        &["no-such-command"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn runge_text_output() {
    let out = run(&["runge", "--family", "f2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("g = [15, 6, 24, 16]"), "{text}");
    assert!(text.contains("(-2, 1)"), "{text}");
}

#[test]
fn thread_count_does_not_change_output() {
    let cases: [&[&str]; 4] = [
        &["--json", "scan", "--n", "4", "--height", "10"],
        &["--json", "points", "--family", "f2", "--height", "12"],
        &["--json", "charpoly", "--family", "c", "--c", "3", "--n", "3", "--p", "5"],
        &["--json", "s4-survey", "--height", "12"],
    ];
    for args in cases {
        let one = run(&[&["--threads", "1"], args].concat());
        let four = run(&[&["--threads", "4"], args].concat());
        assert!(one.status.success(), "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}
