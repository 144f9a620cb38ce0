//! End-to-end checks of the compiled binary: output shapes and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_covernum"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn m12_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/primitive/m12_a12.json")
}

#[test]
fn counts_gcd_mode() {
    let out = run(&["counts", "--n", "105", "--gcd", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("{7,14,28,49}"), "{text}");
    assert!(text.contains("size = 4"));
}

#[test]
fn counts_pattern_mode() {
    let out = run(&["counts", "--n", "12", "-I", "", "-J", "1,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("|P_I^J| = 4"), "{text}");
    assert!(text.contains("= 2"));
    // bad index set exits 2
    let out = run(&["counts", "--n", "12", "-I", "1", "-J", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gfun_csv() {
    let out = run(&["gfun", "--range", "10..16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("n,g"));
    assert!(text.contains("12,4"));
    assert!(text.contains("15,6"));
    // prime powers are skipped
    assert!(!text.lines().any(|l| l.starts_with("11,") || l.starts_with("16,")));
}

#[test]
fn member_imprimitive_with_witness() {
    let out = run(&["member", "--n", "12", "--type", "2,10", "--class", "W:2x6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("true"));
    assert!(text.contains("witness:"));

    let out = run(&["member", "--n", "12", "--type", "5,7", "--class", "W:3x4"]);
    assert_eq!(stdout(&out).trim(), "false");

    let out = run(&["member", "--n", "12", "--type", "1,11", "--class", "A"]);
    assert_eq!(stdout(&out).trim(), "true");

    let out = run(&["member", "--n", "255", "--type", "235,17,3", "--class", "P:20"]);
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn member_rejects_bad_input() {
    // type does not sum to n
    let out = run(&["member", "--n", "12", "--type", "5,8", "--class", "A"]);
    assert_eq!(out.status.code(), Some(2));
    // block shape does not match n
    let out = run(&["member", "--n", "12", "--type", "2,10", "--class", "W:5x3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["member", "--n", "12", "--type", "2,10", "--class", "Q:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gamma_json_s12() {
    let out = run(&["gamma", "--n", "12", "--group", "S", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 12);
    assert_eq!(v["group"], "S");
    assert_eq!(v["g"], 4);
    assert_eq!(v["gamma_modeled"], 4);
    assert_eq!(v["conditional"], true);
    assert!(v["canonical_cover"].as_array().unwrap().len() == 4);
    assert!(v["stats"]["num_types"] == 77);
}

#[test]
fn gamma_with_m12_data() {
    let out = run(&[
        "gamma",
        "--n",
        "12",
        "--group",
        "A",
        "--primitive-data",
        m12_path().to_str().unwrap(),
        "--enumerate-all-min",
        "--threads",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["gamma_modeled"], 3);
    assert_eq!(v["conditional"], false);
    assert_eq!(v["num_min_covers"], 1);
    let cover: Vec<String> = v["canonical_cover"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    assert_eq!(cover, vec!["P:5", "W:3x4", "M12"]);
}

#[test]
fn gamma_infeasible_exits_one() {
    let out = run(&["gamma", "--n", "7", "--group", "A"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("infeasible"), "{err}");
    assert!(err.contains('7'));
}

#[test]
fn gamma_cap_is_enforced() {
    let out = run(&["gamma", "--n", "75", "--group", "S"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["gamma", "--n", "72", "--group", "S", "--cap", "72"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn verify_conjectures_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("report.json");
    let csv_path = dir.path().join("table.csv");
    let out = run(&[
        "verify-conjectures",
        "--range",
        "6..12",
        "--group",
        "S,A",
        "--out",
        json_path.to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
        "--threads",
        "2",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let items = report["items"].as_array().unwrap();
    let a12 = items
        .iter()
        .find(|r| r["n"] == 12 && r["group"] == "A")
        .unwrap();
    assert_eq!(a12["gamma_modeled"], 4);
    assert_eq!(a12["known"]["value"], 3);
    assert_eq!(a12["agrees_with_known"], false);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("n,gamma_S,gamma_A,g,conditional_S,conditional_A"));
    assert!(csv.contains("12,4,4,4,true,true"));
}

#[test]
fn fixtures_part_b_warns_but_passes() {
    let out = run(&["fixtures", "--theorem", "1.3b", "--q", "11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("WARN count_gcd_q"), "{text}");
    assert!(text.contains("stated 2, computed 1"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn fixtures_part_a_q17_all_pass() {
    let out = run(&["fixtures", "--theorem", "1.3a", "--q", "17"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS count_gcd_1: 64"), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(!text.contains("SKIP"));
    // composite q is bad input
    let out = run(&["fixtures", "--theorem", "1.3a", "--q", "15"]);
    assert_eq!(out.status.code(), Some(2));
}
