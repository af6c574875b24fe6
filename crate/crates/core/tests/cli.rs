use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(name: &str) -> String {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn fhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fhs")).args(args).output().expect("spawn fhs")
}

fn stdout(args: &[&str]) -> String {
    let out = fhs(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn generate_single_sequence_matches_golden() {
    let out = stdout(&["generate", "--p", "3", "--n", "2", "--seq", "0", "--format", "csv"]);
    assert_eq!(out, golden("generate_p3_n2_seq0.csv"));
    assert!(out.lines().any(|l| l == "0,0,2,3,0,2,3,1,2,3"));
}

#[test]
fn generate_family_has_six_rows_of_27() {
    let out = stdout(&["generate", "--p", "3", "--n", "3"]);
    assert_eq!(out, golden("generate_p3_n3.csv"));
    let rows: Vec<_> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.split(',').count() == 28));
}

#[test]
fn bounds_matches_golden_in_both_formats() {
    assert_eq!(stdout(&["bounds", "--p", "3", "--n", "2"]), golden("bounds_p3_n2.csv"));
    let json = stdout(&["bounds", "--p", "3", "--n", "2", "--format", "json"]);
    assert_eq!(json, golden("bounds_p3_n2.json"));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["payload"]["A_a"], "7/4");
    assert_eq!(v["payload"]["A_c"], "58/27");
    assert_eq!(v["payload"]["peng_fan"], serde_json::json!([3, 3]));
    assert_eq!(v["payload"]["peng_fan_optimal"], false);
    assert_eq!(v["payload"]["ah_equality"], true);
}

#[test]
fn correlate_goldens() {
    let auto = stdout(&["correlate", "--p", "3", "--n", "2", "--pair", "0", "0", "--mode", "both"]);
    assert_eq!(auto, golden("correlate_p3_n2_pair00_both.csv"));
    assert_eq!(auto.lines().count(), 10);
    assert!(auto.lines().skip(1).all(|l| l.split(',').nth(4) == Some("true")));

    let cross = stdout(&["correlate", "--p", "3", "--n", "2", "--pair", "0", "1", "--mode", "both", "--format", "json"]);
    assert_eq!(cross, golden("correlate_p3_n2_pair01_both.json"));
}

#[test]
fn correlate_closed_is_uncovered_for_one_mod_four() {
    let out = stdout(&["correlate", "--p", "5", "--n", "2", "--pair", "0", "1", "--mode", "closed"]);
    let rows: Vec<_> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| r.split(',').nth(2) == Some("false")));
}

#[test]
fn correlate_brute_spot_value() {
    let out = stdout(&["correlate", "--p", "3", "--n", "2", "--pair", "0", "1", "--mode", "brute"]);
    assert!(out.lines().any(|l| l == "2,6"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["generate", "--p", "4", "--n", "2"][..],
        &["bounds", "--p", "9", "--n", "2"],
        &["generate", "--p", "3", "--n", "1"],
        &["verify", "--p", "3", "--n", "20"],
        &["frobnicate"],
    ] {
        let out = fhs(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
    }
}

#[test]
fn verify_refuses_over_budget_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("errata.jsonl");
    let out = fhs(&["verify", "--p", "3", "--n", "9", "--errata", ledger.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert!(!ledger.exists());
}

#[test]
fn verify_is_deterministic_and_appends_errata() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("errata.jsonl");
    let args = ["verify", "--p", "3", "--n", "2,3", "--errata", ledger.to_str().unwrap()];
    let first = stdout(&args);
    let after_one = std::fs::read_to_string(&ledger).unwrap();
    let second = stdout(&args);
    let after_two = std::fs::read_to_string(&ledger).unwrap();
    assert_eq!(first, second);
    assert_eq!(first, golden("verify_p3_n2_3.csv"));
    assert_eq!(after_two, format!("{after_one}{after_one}"));
    for line in after_one.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["location", "printed_formula", "corrected_formula", "p", "n", "witness"] {
            assert!(v.get(key).is_some(), "missing {key} in {line}");
        }
    }
}

#[test]
fn verify_json_reports_every_instance() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("errata.jsonl");
    let out = stdout(&["verify", "--p", "3,7,11", "--n", "2,3", "--format", "json", "--errata", ledger.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let instances = v["payload"]["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 6);
    assert_eq!(v["manifest"]["checks_failed"], 0);
    assert_eq!(v["manifest"]["exit_status"], 0);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.csv");
    let out = fhs(&["generate", "--p", "3", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&["generate", "--p", "3", "--n", "2"]));
}
