//! Black-box tests of the installed binary: flag handling, exit codes,
//! output formats, and checkpoint resume.

use std::path::PathBuf;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_metacirc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("metacirc-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn build_petersen_prints_fifteen_edges() {
    let out = run(&["build", "--preset", "petersen"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 15);
    assert_eq!(lines[0], "1 2");
    assert_eq!(lines[14], "8 10");
}

#[test]
fn build_json_format_is_parseable() {
    let out = run(&["build", "--preset", "g12", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["vertices"], 12);
    assert_eq!(v["edge_count"], 30);
    assert_eq!(v["edges"].as_array().unwrap().len(), 30);
}

#[test]
fn malformed_spec_file_exits_2() {
    let path = tmp_path("bad.json");
    std::fs::write(&path, "{\"m\": 2").unwrap();
    let out = run(&["build", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn invalid_spec_names_the_broken_conditions() {
    let path = tmp_path("invalid.json");
    // alpha = 3 shares a factor with n = 9 and S0 contains 0.
    std::fs::write(&path, r#"{"m":3,"n":9,"alpha":3,"s":[[0],[1]]}"#).unwrap();
    let out = run(&["build", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("unit"), "mentions the unit condition: {err}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn unknown_preset_exits_2_and_lists_names() {
    let out = run(&["build", "--preset", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("petersen"));
}

#[test]
fn code_report_contains_requested_fields() {
    let out = run(&[
        "code",
        "--preset",
        "g12",
        "--check-self-dual",
        "--distance",
        "--type",
        "--low-support",
        "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["length"], 12);
    assert_eq!(v["self_dual"], true);
    assert_eq!(v["distance"], 6);
    assert_eq!(v["type"]["class"], "II");
    assert_eq!(v["type"]["delta_s"], 5);
    assert!(v["low_support"]["bound"].as_u64().unwrap() >= 6);
}

#[test]
fn generator_dump_rows_are_symbol_strings() {
    let out = run(&["code", "--preset", "petersen", "--generators"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let dump = v["generators"].as_str().unwrap();
    let rows: Vec<&str> = dump.lines().collect();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0], "w100110000");
}

#[test]
fn budget_cap_from_env_refuses_with_exit_3() {
    let out = bin()
        .args(["code", "--preset", "g27_1", "--weight-distribution"])
        .env("METACIRC_BUDGET_L", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("2^27"));
}

#[test]
fn garbage_budget_env_exits_2() {
    let out = bin()
        .args(["code", "--preset", "g12", "--distance"])
        .env("METACIRC_BUDGET_L", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn random_search_requires_seed() {
    let out = run(&["search", "--m", "2", "--n", "3", "--d-target", "1", "--random", "--iters", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--seed"));
}

#[test]
fn search_requires_a_mode() {
    let out = run(&["search", "--m", "2", "--n", "3", "--d-target", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tiny_exhaustive_search_summary() {
    let out = run(&["search", "--m", "2", "--n", "2", "--d-target", "1", "--exhaustive"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines().collect::<Vec<_>>();
    let summary: serde_json::Value = serde_json::from_str(lines.pop().unwrap()).unwrap();
    assert_eq!(summary["evaluated"], "8");
    assert_eq!(summary["hits"], 8);
    assert_eq!(summary["classes"], 3);
    for line in lines {
        let hit: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(hit["d"].as_u64().unwrap() >= 1);
        assert_eq!(hit["exact"], true);
    }
}

#[test]
fn seeded_random_search_is_reproducible() {
    let args =
        ["search", "--m", "2", "--n", "6", "--d-target", "4", "--random", "--seed", "42", "--iters", "50"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn checkpointed_search_resumes_without_rescanning() {
    let hits_path = tmp_path("hits.ndjson");
    let prog_path = tmp_path("progress.json");
    std::fs::remove_file(&hits_path).ok();
    std::fs::remove_file(&prog_path).ok();
    let args = [
        "search", "--m", "2", "--n", "6", "--d-target", "6", "--exhaustive",
        "--out", hits_path.to_str().unwrap(),
        "--progress", prog_path.to_str().unwrap(),
    ];
    let first = run(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    let hits_after_first = std::fs::read_to_string(&hits_path).unwrap();
    let progress: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&prog_path).unwrap()).unwrap();
    assert_eq!(progress["next_index"], 0, "final checkpoint points past the last alpha");

    let second = run(&args);
    assert!(second.status.success());
    let hits_after_second = std::fs::read_to_string(&hits_path).unwrap();
    assert_eq!(hits_after_first, hits_after_second, "resume must not duplicate hits");
    let summary: serde_json::Value =
        serde_json::from_str(stdout(&second).trim().lines().last().unwrap()).unwrap();
    assert_eq!(summary["hits"], 0, "second run scans nothing new");

    std::fs::remove_file(&hits_path).ok();
    std::fs::remove_file(&prog_path).ok();
}

#[test]
fn propagate_prints_each_step() {
    let out = run(&["propagate", "--l", "78", "--k", "0", "--d", "20", "--rules", "shorten,shorten,shorten"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[..4],
        ["[[78, 0, 20]]", "[[77, 1, 19]]", "[[76, 2, 18]]", "[[75, 3, 17]]"]
    );
    let v: serde_json::Value = serde_json::from_str(lines[4]).unwrap();
    assert_eq!((v["l"].as_u64(), v["k"].as_u64(), v["d"].as_u64()), (Some(75), Some(3), Some(17)));
}

#[test]
fn propagate_rule_violation_exits_1_with_rule_index() {
    let out = run(&["propagate", "--l", "5", "--k", "0", "--d", "1", "--rules", "puncture"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("rule 1"));
}

#[test]
fn propagate_malformed_rules_exit_2() {
    for rules in ["grow:3", "lengthen", "subcode:x", "puncture:2"] {
        let out = run(&["propagate", "--l", "10", "--k", "0", "--d", "4", "--rules", rules]);
        assert_eq!(out.status.code(), Some(2), "rules = {rules}");
    }
}

#[test]
fn verify_quick_passes_on_pristine_fixtures() {
    let out = run(&["verify", "--scope", "quick"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    for line in text.lines() {
        if line.starts_with("FAIL") {
            panic!("unexpected failure line: {line}");
        }
    }
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 80);
}

#[test]
fn edge_fixtures_match_their_checksums() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let manifest = std::fs::read_to_string(dir.join("SHA256SUMS")).unwrap();
    let mut checked = 0;
    for line in manifest.lines() {
        let (want, name) = line.split_once("  ").expect("manifest format");
        let data = std::fs::read(dir.join(name)).unwrap();
        let got = format!("{:x}", Sha256::digest(&data));
        assert_eq!(got, want, "{name}");
        checked += 1;
    }
    assert_eq!(checked, 5);
}

#[test]
fn threads_flag_is_accepted() {
    let out = run(&["--threads", "1", "code", "--preset", "g12", "--distance"]);
    assert!(out.status.success());
}
