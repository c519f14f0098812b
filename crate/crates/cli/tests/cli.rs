use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../presentations").join(name);
    root.to_str().unwrap().to_string()
}

fn smon(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_smon")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn smon_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out) = smon(&all);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn equality_in_the_bicyclic_monoid() {
    let f = fixture("bicyclic.txt");
    let (code, out) = smon(&["wp", &f, "aab", "a"]);
    assert_eq!(code, 0);
    assert!(out.contains("equal"));
    let (code, out) = smon(&["wp", &f, "ab", "ba"]);
    assert_eq!(code, 1);
    assert!(out.contains("not equal"));
}

#[test]
fn surface_group_passes_the_two_elevenths_check() {
    let (code, out) = smon(&["kcheck", &fixture("surface2.txt"), "--alpha", "2/11"]);
    assert_eq!(code, 0);
    assert!(out.contains("passed"));
}

#[test]
fn json_reports_carry_the_verdict() {
    let f = fixture("bicyclic.txt");
    for (args, code, verdict) in [
        (vec!["divl", &f, "a", "ab"], 0, "yes"),
        (vec!["divl", &f, "a", "b"], 1, "no"),
        (vec!["divr", &f, "-", "b"], 0, "yes"),
        (vec!["inv", &f, "ab"], 0, "yes"),
        (vec!["inv", &f, "a"], 1, "no"),
    ] {
        let (c, v) = smon_json(&args);
        assert_eq!(c, code, "{args:?}");
        assert_eq!(v["verdict"], verdict, "{args:?}");
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn exit_code_follows_the_verdict() {
    let f = fixture("surface2.txt");
    let cases = [
        (vec!["gwp", &f, "abABcdCD"], 0),
        (vec!["gwp", &f, "a", "--greendlinger"], 1),
        (vec!["gwp", &f, "a"], 2),
    ];
    for (args, code) in cases {
        let (c, v) = smon_json(&args);
        assert_eq!(c, code);
        let expected = ["yes", "no", "unknown"][code as usize];
        assert_eq!(v["verdict"], expected);
    }
}

#[test]
fn maximal_subgroups() {
    let (code, v) = smon_json(&["maxgroup", &fixture("bicyclic.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["generators"], 1);
    let (_, v) = smon_json(&["maxgroup", &fixture("ab_ba.txt")]);
    assert_eq!(v["details"]["generators"], 2);
}

#[test]
fn analyze_reports_the_distinguishing_moves() {
    let (code, v) = smon_json(&["analyze", &fixture("ab_aabb.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["index"], serde_json::json!([6, 4]));
    assert_eq!(v["details"]["distinguished_index"], serde_json::json!([2, 1]));
    assert_eq!(v["details"]["cwords"], serde_json::json!(["ab"]));
    assert_eq!(v["details"]["properties"]["overlap_free"], true);
}

#[test]
fn dehn_log() {
    let (code, v) = smon_json(&["dehn", &fixture("surface2.txt"), "abABcdC"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["fixpoint"], "d");
    assert_eq!(v["details"]["log"].as_array().unwrap().len(), 1);
}

#[test]
fn input_and_usage_errors() {
    let f = fixture("bicyclic.txt");
    assert_eq!(smon(&["wp", &f, "abc", "a"]).0, 65);
    assert_eq!(smon(&["wp", "/nonexistent/file.txt", "a", "a"]).0, 65);
    assert_eq!(smon(&["wp", &f]).0, 64);
    assert_eq!(smon(&["kcheck", &fixture("surface2.txt"), "--alpha", "3/2"]).0, 64);
    assert_eq!(smon(&["frobnicate"]).0, 64);
    let shared = fixture("shared_piece.txt");
    assert_eq!(smon(&["kcheck", &shared]).0, 1);
    assert_eq!(smon(&["gwp", &shared, "a"]).0, 65);
}
