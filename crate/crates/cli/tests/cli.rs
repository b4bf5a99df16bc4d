//! Black-box tests of the `kh` binary.

use std::process::{Command, Output};

fn kh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_trefoil_matches_paper_values() {
    let out = kh(&["compute", "--knot", "3_1", "--spec", "1,1,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("jones V(t): -t^-4 + t^-3 + t^-1"), "{text}");
    assert!(text.contains("-2 -7 0 2"), "missing torsion row: {text}");
}

#[test]
fn compute_unknot_odd_theory() {
    let out = kh(&["compute", "--pd", "", "--spec", "1,-1,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0 -1 1"), "{text}");
    assert!(text.contains("0 1 1"), "{text}");
}

#[test]
fn compute_universal_euler_only() {
    let out = kh(&["compute", "--knot", "4_1", "--spec", "universal", "--euler-only"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("graded euler characteristic:"), "{text}");
    // 4_1 is amphichiral: the characteristic is symmetric under q <-> 1/q.
    let line = text
        .lines()
        .find(|l| l.starts_with("graded euler characteristic:"))
        .unwrap()
        .trim_start_matches("graded euler characteristic:")
        .trim();
    let poly = khovanov::ring::LaurentPoly::parse(khovanov::ring::Var::Q, line).unwrap();
    assert!(poly.is_palindromic(), "{line}");
}

#[test]
fn compute_json_has_schema() {
    let out = kh(&["compute", "--knot", "3_1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["writhe"], -3);
}

#[test]
fn verify_frobenius_suite() {
    let out = kh(&["verify", "--suite", "frobenius"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all passed"));
}

#[test]
fn verify_euler_small() {
    let out = kh(&["verify", "--suite", "euler", "--max-crossings", "5"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("all passed"));
}

#[test]
fn verify_unknown_suite_fails() {
    let out = kh(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_lists_all_entries() {
    let out = kh(&["table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = text.lines().count() - 1;
    assert!(rows >= 35, "{rows} rows");
    assert!(text.contains("8_19"));
}

#[test]
fn table_single_and_missing() {
    let out = kh(&["table", "--name", "8_19"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("8_19"));
    let out = kh(&["table", "--name", "nonexistent"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_one() {
    let out = kh(&["compute", "--pd", "X(1,2,3)"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kh(&["compute", "--pd", "X(1,4,2,3) X(3,6,4,5) X(5,2,6,1)"]);
    // Not a planar diagram under the PD conventions; rejected at validation.
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn deterministic_output_across_job_counts() {
    let a = kh(&["--jobs", "1", "compute", "--knot", "6_2", "--format", "json"]);
    let b = kh(&["--jobs", "4", "compute", "--knot", "6_2", "--format", "json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}
