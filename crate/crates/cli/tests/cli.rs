//! End-to-end exercises of the command-line surface: exit codes, literal
//! round-trips through the tool's own output, config-file handling, and
//! the JSON report file.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exit_zero_on_computed_verdicts_even_false() {
    let out = run(&["prime", "check", "--mode", "4", "--ring", "zmod:6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).contains("verdict: false"));

    let out = run(&["prime", "check", "--mode", "4", "--ring", "gf:2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).contains("verdict: true"));
}

#[test]
fn exit_two_on_precondition_violations() {
    // zero polynomial has no stats
    let out = run(&["hp", "stats", "0", "--ring", "zmod:6"]);
    assert_eq!(out.status.code(), Some(2));
    // a = 0 is outside the right-condition domain
    let out = run(&["thm14", "check", "--elem", "0", "--m", "0", "--ring", "zmod:6"]);
    assert_eq!(out.status.code(), Some(2));
    // example harness demands the shift endomorphism
    let out = run(&["example", "verify", "--ring", "monomial:2,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_one_on_config_errors() {
    let out = run(&["hp", "stats", "0:1", "--ring", "nosuch:4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["hp", "stats", "0:1", "--ring", "zmod:1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["hp", "stats", "0:q", "--ring", "zmod:6"]);
    assert_eq!(out.status.code(), Some(1));
    // cap violation has its own message
    let out = run(&["hp", "stats", "0:1", "--ring", "monomial:5,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("cap"));
}

#[test]
fn printed_product_reparses_to_the_same_value() {
    // multiply over GF(4) with a parenthesized sum coefficient, feed the
    // printed product back through hp stats
    let out = run(&[
        "hp",
        "mul",
        "0:(w+1) + 1:w",
        "1:1",
        "--ring",
        "gf:2,2",
        "--alpha",
        "frobenius",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let product = v["result"]["product"].as_str().unwrap();
    let again = run(&[
        "hp",
        "stats",
        product,
        "--ring",
        "gf:2,2",
        "--alpha",
        "frobenius",
        "--format",
        "json",
    ]);
    assert_eq!(again.status.code(), Some(0));
    let w: serde_json::Value = serde_json::from_str(&stdout_str(&again)).unwrap();
    assert_eq!(w["result"]["delta"], v["result"]["delta"]);
    assert_eq!(w["result"]["supp"], v["result"]["support"]);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("session.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# session defaults").unwrap();
    writeln!(f, "ring = zmod:6").unwrap();
    writeln!(f, "format = json").unwrap();
    writeln!(f, "seed = 5").unwrap();
    drop(f);

    let out = run(&["prime", "check", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["ring"]["key"], "zmod:6");
    assert_eq!(v["seed"], 5);

    // flag overrides the file
    let out = run(&[
        "prime",
        "check",
        "--config",
        path.to_str().unwrap(),
        "--ring",
        "gf:2,2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["ring"]["key"], "gf:2,2");

    // unknown keys are rejected
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "rings = zmod:6\n").unwrap();
    let out = run(&["prime", "check", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "ann",
        "left",
        "2",
        "--ring",
        "zmod:6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["members"], serde_json::json!(["0", "3"]));
    assert_eq!(v["result"]["is_zero"], false);
}

#[test]
fn closure_expressions_evaluate_before_annihilating() {
    let out = run(&["ann", "left", "ideal(2)", "--ring", "zmod:6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["result"]["input"], serde_json::json!(["0", "2", "4"]));
    assert_eq!(v["result"]["members"], serde_json::json!(["0", "3"]));

    let out = run(&[
        "insulator",
        "search",
        "alpha-ideal(x0)",
        "--side",
        "left",
        "--ring",
        "monomial:2,2",
        "--alpha",
        "shift",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["result"]["outcome"], "proved-absent");
    assert_eq!(v["result"]["witness"], "x1");
}

#[test]
fn meet_image_eventual_reports_smallest_matching_power() {
    let out = run(&[
        "ann",
        "meet-image",
        "x0x1",
        "--n",
        "eventual",
        "--ring",
        "monomial:3,2",
        "--alpha",
        "shift",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["result"]["is_zero"], true);
    assert!(v["result"]["n_used"].as_u64().unwrap() <= 3);
}

#[test]
fn thm14_report_carries_the_full_certificate() {
    let out = run(&[
        "thm14",
        "check",
        "--elem",
        "x0",
        "--m",
        "1",
        "--ring",
        "monomial:3,2",
        "--alpha",
        "shift",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let cert = &v["result"]["certificate"];
    assert_eq!(cert["m"], 1);
    assert_eq!(cert["verified"], true);
    assert!(!cert["insulator"].as_array().unwrap().is_empty());
    let n = cert["n"].as_u64().unwrap();
    let k = cert["k"].as_u64().unwrap();
    assert_eq!(cert["u"].as_u64().unwrap(), n.max(1 + k));
}
