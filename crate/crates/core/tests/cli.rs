use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kaleidoscope")).args(args).output().expect("binary runs")
}

fn json_lines(args: &[&str]) -> Vec<Value> {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

#[test]
fn verify_all_passes_with_expected_counts() {
    let r = &json_lines(&["verify"])[0];
    assert_eq!(r["passed"], true);
    assert_eq!(r["counts"]["squares"], 10);
    assert_eq!(r["counts"]["tetrads"], 105);
    assert_eq!(r["counts"]["apparitions"], 1120);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_text_scope() {
    let out = run(&["verify", "squares"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("squares.magic"));
}

#[test]
fn corrupted_tables_fail_verification() {
    for table in ["mub_sets", "s1_tetrads", "eigenstates"] {
        let out = run(&["--corrupt", table, "verify"]);
        assert_eq!(out.status.code(), Some(1), "{table}");
    }
    assert_eq!(run(&["--corrupt", "nonsense", "verify"]).status.code(), Some(2));
}

#[test]
fn list_records() {
    let states = json_lines(&["list", "states"]);
    assert_eq!(states.len(), 60);
    assert_eq!(states[36]["label"], 37);
    assert_eq!(states[36]["state"], "(1,0,0,i)");
    let triads = json_lines(&["list", "triads"]);
    assert_eq!(triads.len(), 15);
    assert_eq!(triads.iter().filter(|t| t["sign"] == -1).count(), 3);
    assert_eq!(json_lines(&["list", "tetrads", "--square", "S1"]).len(), 24);
    assert_eq!(json_lines(&["list", "tetrads"]).len(), 105);
    assert_eq!(json_lines(&["list", "lines", "--square", "S3"]).len(), 32);
    assert_eq!(json_lines(&["list", "observables"]).len(), 15);
    assert_eq!(json_lines(&["list", "mubsets"]).len(), 6);
}

#[test]
fn apparition_streams() {
    assert_eq!(json_lines(&["apparitions", "--square", "S1", "--kind", "18"]).len(), 16);
    assert_eq!(json_lines(&["apparitions", "--all"]).len(), 1120);
    let checked = json_lines(&["apparitions", "--square", "S4", "--kind", "20", "--check"]);
    assert_eq!(checked.len(), 96);
    assert!(checked.iter().all(|r| r["colorings"] == 0 && r["parity"] == true));
}

#[test]
fn find_map_locality() {
    let s2 = json_lines(&["find-map", "S1", "S2"]);
    assert!(s2.iter().any(|m| m["local"] == true));
    let s6 = json_lines(&["find-map", "S1", "S6"]);
    assert_eq!(s6.len(), 72);
    assert!(s6.iter().all(|m| m["local"] == false));
    let identity = serde_json::json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    assert!(json_lines(&["find-map", "S1", "S1"]).iter().any(|m| m["map"] == identity));
    let lifted = json_lines(&["find-map", "S1", "S3", "--lift"]);
    assert!(lifted.iter().all(|m| m["lift"]["matrix"].as_array().unwrap().len() == 4));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["list", "states", "--square", "S1"][..],
        &["apparitions", "--kind", "19"],
        &["apparitions", "--square", "S11"],
        &["find-map", "S1", "S0"],
        &["list", "nothing"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--format", "csv", "list", "lines"]);
    let b = run(&["--format", "csv", "list", "lines"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn other_formats() {
    let out = run(&["--format", "json-array", "list", "squares"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
    assert_eq!(v[0]["id"], "S1");

    let out = run(&["--format", "csv", "list", "states"]);
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["label", "coords", "state", "triad", "signature"]);
    assert_eq!(rdr.records().count(), 60);

    let text = String::from_utf8(run(&["list", "triads"]).stdout).unwrap();
    assert_eq!(text.lines().count(), 16);

    let export: Value = serde_json::from_slice(&run(&["--format", "json", "export"]).stdout).unwrap();
    assert_eq!(export["squares"].as_array().unwrap().len(), 10);
    assert_eq!(export["tetrads"].as_array().unwrap().len(), 105);
}
