use std::process::{Command, Output};

use serde_json::Value;

fn npseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_npseq")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = npseq(&full);
    let doc = serde_json::from_slice(&out.stdout).expect("valid JSON");
    (out.status.code().unwrap(), doc)
}

#[test]
fn analyze_five_term_example() {
    let out = npseq(&["analyze", "--p", "3", "--seq", "Z,Z,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("NPS type  (2,1)"));
    assert!(text.contains("PDPDS     (5,3,3,1,0,2,0,0)"));
}

#[test]
fn analyze_renders_non_integral_values_as_vectors() {
    let (code, doc) = json(&["analyze", "--p", "3", "--seq", "Z,Z,1,0,1,1"]);
    assert_eq!(code, 0);
    let values = doc["results"]["profile"]["values"].as_array().unwrap();
    assert!(values.iter().any(Value::is_array));
    assert_eq!(doc["results"]["profile"]["ell"], 4);
    assert!(doc["results"]["nps"].is_null());
}

#[test]
fn analyze_parse_error_exits_2() {
    assert_eq!(npseq(&["analyze", "--p", "3", "--seq", "Z,9"]).status.code(), Some(2));
    assert_eq!(npseq(&["analyze", "--p", "4", "--seq", "Z,1"]).status.code(), Some(2));
    assert_eq!(npseq(&["analyze", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn json_envelope_has_stable_keys() {
    let invocations: [&[&str]; 5] = [
        &["analyze", "--p", "3", "--seq", "Z,Z,1,1,1"],
        &["verify-pdpds", "--N", "5", "--p", "3", "--set", "(2,1);(3,1);(4,1)"],
        &["bounds", "--n", "3", "--p", "3", "--gamma1", "2", "--gamma2", "1"],
        &["table", "--n", "15", "--gamma1-list", "-10", "--gamma2-list", "-8"],
        &["search", "--p", "3", "--period", "5", "--zeros", "2"],
    ];
    for args in invocations {
        let (_, doc) = json(args);
        let keys: Vec<&String> = doc.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["checks", "inputs", "results", "version"], "{args:?}");
    }
}

#[test]
fn verify_pdpds_examples() {
    let set = "(2,1);(3,1);(4,1)";
    let out = npseq(&["verify-pdpds", "--N", "5", "--p", "3", "--set", set]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(5,3,3,1,0,2,0,0)"));

    let out = npseq(&["verify-pdpds", "--N", "5", "--p", "3", "--set", set, "--params", "5,3,3,2,0,2,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("residual nonzero"));

    let out = npseq(&["verify-pdpds", "--N", "5", "--p", "3", "--set", set, "--params", "5,3,3,1,0,2,0,0"]);
    assert_eq!(out.status.code(), Some(0));

    assert_eq!(npseq(&["verify-pdpds", "--N", "5", "--p", "3", "--set", "(9,0)"]).status.code(), Some(2));
}

#[test]
fn verify_pdpds_reports_first_violated_class() {
    let out = npseq(&["verify-pdpds", "--N", "5", "--p", "3", "--set", "(1,0);(2,1)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("not a PDPDS:"));
}

#[test]
fn bounds_examples() {
    let (code, doc) = json(&["bounds", "--n", "15", "--p", "5", "--gamma1", "-10", "--gamma2", "-8"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["bound"], -1);
    assert_eq!(doc["results"]["nonexistence"], true);

    let (code, doc) = json(&["bounds", "--n", "3", "--p", "3", "--gamma1", "2", "--gamma2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["status"], "undecided");

    let (code, doc) = json(&["bounds", "--n", "10", "--p", "3", "--gamma1", "0", "--gamma2", "-3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["status"], "divisibility-fail");
    assert_eq!(doc["checks"]["gamma2 <= -3"], false);
}

#[test]
fn table_csv_and_empty_lists() {
    let out = npseq(&["table", "--n", "15", "--gamma1-list", "-10,-7", "--gamma2-list", "-8,10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "gamma1,gamma2,B,verdict\n-10,-8,-1,not exist\n-10,10,3,undecided\n-7,-8,-2,not exist\n-7,10,2,undecided\n"
    );
    let out = npseq(&["table", "--n", "15", "--gamma1-list", "", "--gamma2-list", ""]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "gamma1,gamma2,B,verdict\n");
}

#[test]
fn search_examples() {
    let (code, doc) = json(&["search", "--p", "3", "--period", "5", "--zeros", "2", "--type", "2,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["matches"].as_array().unwrap().len(), 1);

    assert_eq!(npseq(&["search", "--p", "7", "--period", "20", "--zeros", "2"]).status.code(), Some(3));
    assert_eq!(
        npseq(&["search", "--p", "3", "--period", "5", "--zeros", "2", "--filter", "odd"]).status.code(),
        Some(2)
    );
}

#[test]
fn roundtrip_is_deterministic_across_jobs() {
    let base = ["roundtrip", "--p", "3", "--period", "7", "--zeros", "2", "--format", "json"];
    let one = npseq(&[&base[..], &["--jobs", "1"]].concat());
    let four = npseq(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let doc: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert!(doc["results"]["violations"].as_array().unwrap().is_empty());
    assert_eq!(doc["checks"]["no-violations"], true);
}

#[test]
fn roundtrip_rejects_wrong_zero_count() {
    assert_eq!(npseq(&["roundtrip", "--p", "3", "--period", "7", "--zeros", "1"]).status.code(), Some(2));
}
