use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zipstrata")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn strata_list_sizes() {
    for (n, r, nodes, edges) in [("2", "1", 2, 1), ("4", "2", 6, 6), ("5", "3", 10, 0)] {
        let v = json(&["strata-list", "--gl", n, r]);
        assert_eq!(v["nodes"].as_array().unwrap().len(), nodes);
        if edges > 0 {
            assert_eq!(v["edges"].as_array().unwrap().len(), edges);
        }
    }
}

#[test]
fn strata_diagram_at_22() {
    let out = run(&["strata-list", "--gl", "4", "2", "--format", "dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for edge in [
        "\"[3142]\" -> \"[3412]\"",
        "\"[1342]\" -> \"[3142]\"",
        "\"[3124]\" -> \"[3142]\"",
        "\"[1324]\" -> \"[1342]\"",
        "\"[1324]\" -> \"[3124]\"",
        "\"[1234]\" -> \"[1324]\"",
    ] {
        assert!(text.contains(edge), "{edge}");
    }
    assert!(text.contains("no hasse"));
}

#[test]
fn decide_w1_at_32() {
    let v = json(&["decide", "--gl", "5", "3", "w1", "wprime"]);
    assert_eq!(v["smooth"], Value::Bool(true));
    let v = json(&["decide", "--gl", "5", "3", "w2", "wprime"]);
    assert_eq!(v["smooth"], Value::Bool(false));
    assert_eq!(v["certificate"], Value::String("[13245]".into()));
}

#[test]
fn xi_identity_and_words() {
    assert_eq!(json(&["xi", "--gl", "4", "2", "1,2,3,4"])["xi"], "[1234]");
    assert_eq!(json(&["xi", "--gl", "5", "3", "s4"])["xi"], "[12435]");
    let v = json(&["xi", "--gl", "2", "1", "--matrix", "[[1,0],[0,1]]", "--q", "3"]);
    assert_eq!(v["xi"], "[12]");
}

#[test]
fn sweep_matches_closed_form() {
    let v = json(&["sweep-length2", "--max-n", "9"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r["agrees"] == Value::Bool(true)));
}

#[test]
fn census_csv() {
    let out = run(&["census", "--gl", "3", "2", "--q", "2", "--ms", "1,2,3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "w,m=1,m=2,m=3");
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["closed-form", "4", "1"]).status.code(), Some(2));
    assert_eq!(run(&["decide", "--gl", "4", "2", "3124", "1342"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--gl", "4", "2", "--q", "3", "--budget", "1000"]).status.code(), Some(3));
    assert_eq!(run(&["strata-list", "--gl", "12", "6", "--budget", "100"]).status.code(), Some(3));
    assert_eq!(run(&["xi", "--gl", "3", "1", "--random", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn seeded_output_is_deterministic() {
    let a = run(&["xi", "--gl", "4", "2", "--random", "--q", "9", "--seed", "3"]);
    let b = run(&["xi", "--gl", "4", "2", "--random", "--q", "9", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generic_datum_from_file() {
    let dir = std::env::temp_dir().join(format!("zipstrata-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b2.json");
    std::fs::write(&path, r#"{"cartan": [[2,-2],[-1,2]], "I": [1]}"#).unwrap();
    let v = json(&["strata-list", "--cartan", path.to_str().unwrap()]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn hasse_catalog_at_22() {
    assert_eq!(json(&["hasse", "--gl", "4", "2", "1324"])["feasible"], Value::Bool(false));
    assert_eq!(json(&["hasse", "--gl", "4", "2", "3124"])["feasible"], Value::Bool(true));
    let v = json(&["hasse", "--gl", "3", "2", "s2", "--lambda", "0,0,0"]);
    assert_eq!(v["feasible"], Value::Bool(true));
}
