//! End-to-end tests driving the `permq` binary.

use std::path::Path;
use std::process::{Command, Output};

fn permq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permq"))
        .args(args)
        .current_dir(dir)
        .env_remove("PERMQ_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn enumerate_emits_json_census_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["enumerate", "--n", "4..6", "--patterns", "1234,3412", "--cache", "c"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    let nontrivial: Vec<u64> = lines.iter().map(|v| v["nontrivial_classes"].as_u64().unwrap()).collect();
    assert_eq!(nontrivial, vec![1, 9, 26]);
    assert_eq!(lines[0]["n"], 4);
    assert_eq!(lines[0]["patterns"], "1234,3412");
    assert_eq!(lines[0]["total_classes"], 23);
    assert_eq!(lines[0]["b_count"], 1);
    assert_eq!(lines[0]["size_histogram"]["1"], 22);
    assert!(lines[0]["workers"].is_u64());
}

#[test]
fn enumerate_n7_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["enumerate", "--n", "7", "--cache", "c"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["nontrivial_classes"], 51);
}

#[test]
fn cache_round_trip_is_byte_identical_and_logged() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["enumerate", "--n", "5..6", "--cache", "c"];
    let first = permq(dir.path(), &args);
    assert_eq!(code(&first), 0);
    assert!(stderr(&first).contains("cached to"));
    let second = permq(dir.path(), &args);
    assert_eq!(code(&second), 0);
    assert_eq!(first.stdout, second.stdout, "census output must be byte-identical");
    let log = stderr(&second);
    assert_eq!(log.matches("cache hit").count(), 2, "{log}");
    assert!(!log.contains("enumerated"), "no recomputation expected: {log}");
}

#[test]
fn cache_key_is_canonical_in_pattern_order() {
    let dir = tempfile::tempdir().unwrap();
    let first = permq(dir.path(), &["enumerate", "--n", "5", "--patterns", "1234,3412", "--cache", "c"]);
    assert_eq!(code(&first), 0);
    // the reversed spelling must reuse the same entry
    let second = permq(dir.path(), &["enumerate", "--n", "5", "--patterns", "3412,1234", "--cache", "c"]);
    assert_eq!(code(&second), 0);
    assert!(stderr(&second).contains("cache hit"), "{}", stderr(&second));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_all_over_range_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["verify", "--n", "7..9", "--checks", "all", "--cache", "c"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let reports: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(reports.len(), 27); // nine checks, three lengths
    assert!(reports.iter().all(|r| r["passed"] == true));
    let sampled = reports
        .iter()
        .find(|r| r["check"] == "creating-primary" && r["n_range"][0] == 9)
        .unwrap();
    assert_eq!(sampled["seed"], 330395);
}

#[test]
fn permq_cache_env_overrides_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_permq"))
        .args(["enumerate", "--n", "4", "--cache", "ignored"])
        .current_dir(dir.path())
        .env("PERMQ_CACHE", "from-env")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("from-env").is_dir());
    assert!(!dir.path().join("ignored").exists());
}

#[test]
fn enumerate_rejects_out_of_range_n() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["enumerate", "--n", "13", "--patterns", "1234,3412"]);
    assert_eq!(code(&out), 2);
    let out = permq(dir.path(), &["enumerate", "--n", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_refuses_n12_without_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["enumerate", "--n", "12", "--cache", "c"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    assert!(stderr(&out).contains("GiB"), "{}", stderr(&out));
}

#[test]
fn enumerate_rejects_malformed_patterns() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["enumerate", "--n", "4", "--patterns", "123,3412"]);
    assert_eq!(code(&out), 2);
    let out = permq(dir.path(), &["enumerate", "--n", "4", "--patterns", "12x4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_csv_and_plain_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["enumerate", "--n", "4", "--cache", "c", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,patterns,total_classes,nontrivial_classes,b_count,size_histogram,workers"
    );
    assert!(lines.next().unwrap().starts_with("4,\"1234,3412\",23,1,1,1:22;2:1,"));

    let out = permq(dir.path(), &["enumerate", "--n", "4", "--cache", "c", "--format", "plain"]);
    assert!(stdout(&out).contains("n=4 patterns=1234,3412 total=23 nontrivial=1 b_count=1"));
}

#[test]
fn sequence_prints_b_file_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["sequence", "--n", "4..7", "--cache", "c"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "4 1\n5 9\n6 26\n7 51\n");
}

#[test]
fn sequence_empty_range_prints_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["sequence", "--n", "9..7", "--cache", "c"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
}

#[test]
fn verify_single_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["verify", "--n", "7", "--checks", "closed-form", "--cache", "c"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["check"], "closed-form");
    assert_eq!(report["passed"], true);
    assert_eq!(report["counterexample"], serde_json::Value::Null);
}

#[test]
fn verify_all_checks_at_n7() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["verify", "--n", "7", "--checks", "all", "--cache", "c"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let reports: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // all nine checks apply at n = 7
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r["passed"] == true));
    let creating = reports.iter().find(|r| r["check"] == "creating-primary").unwrap();
    assert!(creating["notes"].as_str().unwrap().contains("statement triples"));
}

#[test]
fn verify_precondition_violation_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["verify", "--n", "5", "--checks", "closed-form", "--cache", "c"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("requires n >= 7"), "{}", stderr(&out));
}

#[test]
fn verify_unknown_check_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["verify", "--n", "7", "--checks", "nope", "--cache", "c"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown check"), "{}", stderr(&out));
}

#[test]
fn verify_all_skips_out_of_domain_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["verify", "--n", "4", "--checks", "all", "--cache", "c"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let reports: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let names: Vec<&str> = reports.iter().map(|r| r["check"].as_str().unwrap()).collect();
    assert_eq!(names, vec!["recurrence", "parity", "parity-moves"]);
    assert!(reports.iter().all(|r| r["passed"] == true));
}

#[test]
fn verify_reports_failure_with_exit_1() {
    // parity is not invariant under {123, 321} moves
    let dir = tempfile::tempdir().unwrap();
    let out = permq(
        dir.path(),
        &["verify", "--n", "3..4", "--checks", "parity", "--patterns", "123,321", "--cache", "c"],
    );
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    let reports: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r["passed"] == false));
    assert_eq!(reports[0]["counterexample"]["kind"], "class");
}

#[test]
fn verify_quad_specific_check_rejects_other_patterns() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(
        dir.path(),
        &["verify", "--n", "7", "--checks", "b-count", "--patterns", "1234,2143", "--cache", "c"],
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("specific to the 1234,3412 relation"), "{}", stderr(&out));
}

#[test]
fn class_lists_members_and_tags() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["class", "--perm", "1234"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["size"], 2);
    assert_eq!(v["members"], serde_json::json!(["1,2,3,4", "3,4,1,2"]));

    // the worked example: 7162435's class contains 7365412
    let out = permq(dir.path(), &["class", "--perm", "7162435", "--format", "plain"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("7,3,6,5,4,1,2"), "{}", stdout(&out));

    let out = permq(dir.path(), &["class", "--perm", "2143"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["size"], 1);
    assert_eq!(v["tags"][0]["tag"], "singleton");
}

#[test]
fn class_parse_failure_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let out = permq(dir.path(), &["class", "--perm", "11,2"]);
    assert_eq!(code(&out), 2);
    let out = permq(dir.path(), &["class", "--perm", "1234", "--class-cap", "1"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}
