//! End-to-end runs of the binary: outputs and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poset-shell")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_counts() {
    for (args, count) in [
        (&["enumerate", "--poset", "partial-involutions", "--n", "3"][..], 14),
        (&["enumerate", "--poset", "rooks", "--n", "3", "--k", "2"][..], 18),
        (&["enumerate", "--poset", "rooks", "--n", "0"][..], 1),
        (&["enumerate", "--poset", "involutions", "--n", "4"][..], 10),
        (&["enumerate", "--poset", "permutations", "--n", "4"][..], 24),
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).contains(&format!("count: {count}\nexpected: {count}\n")), "{args:?}");
    }
}

#[test]
fn enumerate_json_has_schema() {
    let o = run(&["enumerate", "--poset", "rooks", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "poset-shell/1");
    assert_eq!(v["count"], 7);
    assert_eq!(v["elements"].as_array().unwrap().len(), 7);
}

#[test]
fn hasse_dot_of_p3_has_labeled_edges() {
    let o = run(&["hasse", "--n", "3", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges.len(), 23);
    assert!(edges.iter().all(|l| l.contains("label=")));
}

#[test]
fn hasse_highlights_the_symmetric_group_in_r3() {
    let o = run(&["hasse", "--poset", "rooks", "--n", "3", "--highlight-embedding", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 34);
    assert_eq!(v["highlighted"].as_array().unwrap().len(), 24);
}

#[test]
fn hasse_of_a_point() {
    let o = run(&["hasse", "--poset", "rooks", "--n", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 1);
    assert!(v["edges"].as_array().unwrap().is_empty());
}

#[test]
fn passing_checks_exit_zero() {
    for args in [
        &["check", "el", "--n", "3"][..],
        &["check", "eulerian", "--n", "4", "--all-k"][..],
        &["check", "iso", "--n", "3", "--side", "involutions"][..],
        &["check", "covers", "--n", "4"][..],
        &["check", "shelling", "--n", "3"][..],
        &["check", "mobius-cross", "--n", "3"][..],
        &["check", "el", "--n", "4", "--poset", "involutions"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).ends_with("result: PASS\n"), "{args:?}");
    }
}

#[test]
fn violations_exit_one() {
    // the move labeling has intervals without an increasing chain at n = 4
    let o = run(&["check", "el", "--n", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violations: 8"));
    let o = run(&["check", "el", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["violation_count"], 8);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["check", "el", "--n", "9"][..],
        &["enumerate", "--n", "7"][..],
        &["check", "el", "--poset", "permutations", "--n", "3"][..],
        &["enumerate", "--poset", "involutions", "--n", "3", "--k", "1"][..],
        &["enumerate", "--n", "3", "--format", "dot"][..],
        &["check", "eulerian", "--n", "3", "--k", "1", "--all-k"][..],
        &["check", "bogus", "--n", "3"][..],
        &["enumerate"][..],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_of_scope_is_explained() {
    let o = run(&["check", "el", "--poset", "permutations", "--n", "3"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of scope"));
}

#[test]
fn allow_large_lifts_the_cap() {
    assert_eq!(run(&["enumerate", "--poset", "rooks", "--n", "7", "--k", "1", "--allow-large"]).status.code(), Some(0));
}

#[test]
fn out_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("poset-shell-{}.json", std::process::id()));
    let o = run(&["check", "iso", "--n", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["schema"], "poset-shell/1");
    assert_eq!(v["passed"], true);
}
