//! End-to-end tests of the command-line surface: exit codes, output shapes
//! and determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itqft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn stablecoh_plain_output_matches_contract() {
    let out = run(&["stablecoh", "--source", "Z", "--coeff", "Cx", "--degree", "4"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "Z/6");
}

#[test]
fn stablecoh_undetermined_exits_three_with_reason() {
    let out = run(&["stablecoh", "--source", "Z/3", "--coeff", "Z", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("undetermined:"), "got: {text}");
}

#[test]
fn stablecoh_witt_entry() {
    let out = run(&["stablecoh", "--source", "W", "--coeff", "Cx", "--degree", "5"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "Sum_N(Z/2)"
    );
}

#[test]
fn parse_errors_exit_two() {
    // Bad manifold expression.
    let out = run(&["skk", "--manifold", "RP4"]);
    assert_eq!(out.status.code(), Some(2));
    // Bad group expression.
    let out = run(&["stablecoh", "--source", "Q", "--coeff", "Z", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // Bad scalar.
    let out = run(&["partition", "--lambda1", "zero", "--lambda2", "1", "--manifold", "S4"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown flags are rejected by the argument parser (exit 2).
    let out = run(&["classify", "--target", "brfus", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // Modular data outside the admissible range.
    let out = run(&[
        "crane-yetter",
        "--global-dim",
        "1/2",
        "--central-charge",
        "0",
        "--manifold",
        "S4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsupported_results_exit_three_with_reason() {
    let out = run(&["classify", "--target", "brfus", "--so-k", "2", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(payload["error"].as_str().unwrap().contains("k = 2"));

    let out = run(&["classify", "--target", "svect"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["classify", "--target", "svect", "--partial"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["spectrum", "--mt", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_outputs_are_byte_identical_across_runs() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["classify", "--target", "brfus", "--json"],
        vec!["skk", "--manifold", "K3 # CP2", "--json"],
        vec![
            "partition", "--lambda1", "2*e(1/3)", "--lambda2", "7/5",
            "--manifold", "CP2 # 3*K3", "--manifold", "S4 + T4", "--json",
        ],
        vec![
            "crane-yetter", "--global-dim", "5/2", "--central-charge", "3/2",
            "--manifold", "K3", "--as-class", "--json",
        ],
        vec!["mapgroup", "--source", "(Z; 4; Z^2; k=unknown)", "--target", "(W; 4; Cx; k=unknown)", "--json"],
        vec!["target", "--name", "brfus", "--json"],
    ];
    for args in cases {
        let first = stdout(&args);
        let second = stdout(&args);
        assert_eq!(first, second, "nondeterministic output for {args:?}");
        assert!(!first.is_empty());
    }
}

#[test]
fn batch_partition_preserves_order() {
    let out = run(&[
        "partition",
        "--lambda1", "2",
        "--lambda2", "3",
        "--manifold", "S4",
        "--manifold", "K3",
        "--manifold", "T4",
        "--json",
    ]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = payload["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(results[0]["manifold"], "S4");
    assert_eq!(results[0]["value"]["display"], "3");
    assert_eq!(results[2]["manifold"], "T4");
    assert_eq!(results[2]["value"]["display"], "1");
}

#[test]
fn skk_manifold_shape() {
    let out = run(&["skk", "--manifold", "K3", "--json"]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(payload["chi"], 24);
    assert_eq!(payload["sigma"], -16);
    assert_eq!(payload["second_factor"], -20);
}

#[test]
fn oracle_flag_reports_match() {
    let out = run(&[
        "stablecoh", "--source", "Z/2", "--coeff", "Z", "--degree", "1", "--oracle", "--json",
    ]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(payload["value"]["group"], "Z/2");
    assert_eq!(payload["oracle"]["verdict"], "match");
}

#[test]
fn oracle_budget_is_respected() {
    let out = run(&[
        "stablecoh", "--source", "Z/4", "--coeff", "Z", "--degree", "2",
        "--oracle", "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("budget"), "got: {text}");
}

#[test]
fn classify2d_with_evaluation() {
    let out = run(&[
        "classify2d", "--target", "alg", "--structure", "so",
        "--lambda", "3", "--surface", "Sigma(0)", "--json",
    ]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(payload["nonsplit"], true);
    assert_eq!(payload["evaluation"]["value"]["display"], "9");
    assert_eq!(payload["evaluation"]["chi"], 2);
}

#[test]
fn reflection_positive_flag_values() {
    let yes = run(&["reflection-positive", "--lambda1", "1.5", "--lambda2", "2.25", "--json"]);
    let payload: serde_json::Value = serde_json::from_slice(&yes.stdout).unwrap();
    assert_eq!(payload["reflection_positive"], true);

    let no = run(&["reflection-positive", "--lambda1", "2", "--lambda2", "1", "--json"]);
    let payload: serde_json::Value = serde_json::from_slice(&no.stdout).unwrap();
    assert_eq!(payload["reflection_positive"], false);
}

#[test]
fn extend_point_round_trips_witt_serialization() {
    let witt = r#"{"c32": 31, "summands": {"4": [-2, 1, 3]}}"#;
    let out = run(&[
        "extend-point", "--target", "brfus", "--witt", witt,
        "--lambda1", "1", "--lambda2", "1", "--json",
    ]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(payload["count"], 6);
    assert_eq!(payload["classes"][0]["picard_class"]["c32"], 31);
    assert_eq!(
        payload["classes"][0]["picard_class"]["summands"]["4"],
        serde_json::json!([-2, 1, 3])
    );
    // Bad Witt JSON is an input error.
    let bad = run(&[
        "extend-point", "--target", "brfus", "--witt", r#"{"c32": 77}"#,
        "--lambda1", "1", "--lambda2", "1",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}
