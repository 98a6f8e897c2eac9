use std::process::{Command, Output};

use qstirling::stirling_q::{build_first_table, build_second_table, QStirlingTable};
use qstirling::VerificationReport;
use serde_json::Value;

fn qstirling(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qstirling"))
        .args(args)
        .env_remove("QSTIRLING_TRUNCATION")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn table_json_round_trips() {
    for n in 1..=15u32 {
        let n_arg = n.to_string();
        let out = qstirling(&["table", "s2", "--n", &n_arg]);
        assert_eq!(out.status.code(), Some(0));
        let t: QStirlingTable = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(t, build_second_table(n));

        let out = qstirling(&["table", "s1", "--n", &n_arg]);
        let t: QStirlingTable = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(t, build_first_table(n));
    }
}

#[test]
fn table_second_kind_example() {
    let v = json(&qstirling(&["table", "s2", "--n", "3"]));
    assert_eq!(v["kind"], "second");
    assert_eq!(v["max_n"], 3);
    assert_eq!(v["rows"][3][2], serde_json::json!([[1, "2"], [2, "1"]]));
}

#[test]
fn first_kind_at_zero_is_a_domain_error() {
    let out = qstirling(&["table", "s1", "--n", "3", "--q", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn bell_and_eulerian_tables() {
    let v = json(&qstirling(&["table", "bell", "--n", "7", "--q", "1"]));
    let vals: Vec<&str> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(vals, ["1", "1", "2", "5", "15", "52", "203", "877"]);

    let v = json(&qstirling(&["table", "eulerian", "--n", "4"]));
    assert_eq!(v["rows"][0], serde_json::json!([]));
    assert_eq!(v["rows"][4], serde_json::json!([1, 11, 11, 1]));
}

#[test]
fn fermionic_tables() {
    let v = json(&qstirling(&["table", "sf1", "--n", "6"]));
    assert_eq!(v["kind"], "sf1");
    assert_eq!(v["rows"][6][1], 0);
    let v = json(&qstirling(&["table", "sf2", "--n", "5"]));
    assert_eq!(v["rows"][5][3], -3);
}

#[test]
fn verify_reports_and_exit_codes() {
    for suite in [
        "orthogonality",
        "closed-form",
        "newton-gregory",
        "connection",
        "fermionic",
        "inversion",
        "specialization",
        "gessel",
        "eulerian-bernoulli",
    ] {
        let out = qstirling(&["verify", suite, "--n", "6"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        let r: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
        assert!(r.passed() && r.checks_run > 0, "{suite}");
    }
    let out = qstirling(&["verify", "all", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.suite, "all");

    assert_eq!(
        qstirling(&["verify", "closed-form", "--n", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gessel_beyond_truncation_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_qstirling"))
        .args(["verify", "gessel", "--n", "10"])
        .env("QSTIRLING_TRUNCATION", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_qstirling"))
        .args(["bernoulli", "--order", "1", "--index", "2"])
        .env("QSTIRLING_TRUNCATION", "abc")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn interp_example() {
    let out = qstirling(&["interp", "--z", "-3", "--k", "2", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["value"]["re"].as_f64().unwrap() - 1.25).abs() < 1e-12);
    assert_eq!(v["value"]["im"].as_f64().unwrap(), 0.0);
}

#[test]
fn zeta_and_bernoulli() {
    let v = json(&qstirling(&["zeta", "--k", "1", "--terms", "10000"]));
    let s = v["partial_sum"].as_f64().unwrap();
    assert!((s - std::f64::consts::PI.powi(2) / 6.0).abs() < 2e-4);

    let v = json(&qstirling(&["bernoulli", "--order", "1", "--index", "2"]));
    assert_eq!(v["value"], "1/6");
    let v = json(&qstirling(&["bernoulli", "--order", "-3", "--index", "1"]));
    assert_eq!(v["value"], "3/2");
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(qstirling(&[]).status.code(), Some(2));
    assert_eq!(
        qstirling(&["table", "s9", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qstirling(&["interp", "--z", "1", "--k", "1", "--q", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qstirling(&["--help"]).status.code(), Some(0));
    assert_eq!(qstirling(&["--version"]).status.code(), Some(0));
}
