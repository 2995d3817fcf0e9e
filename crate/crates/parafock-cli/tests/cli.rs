//! End-to-end tests of the binary: exit codes, determinism, and the JSON
//! schema, driven through real process invocations.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn parafock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parafock"))
        .args(args)
        .env_remove("PARAFOCK_MAX_BASIS")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn green_suite_passes() {
    let out = parafock(&["verify", "--suite", "green", "--R", "2", "--p", "2", "--nmax", "6"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("suite: green (R=2 p=2 n_max=6 depth=4)"));
    assert!(text.ends_with("overall: pass\n"));
    assert!(!text.contains("[fail]"));
}

#[test]
fn closure_suite_passes_and_is_deterministic() {
    let args = ["verify", "--suite", "closure", "--R", "4", "--p", "1", "--nmax", "6"];
    let first = parafock(&args);
    assert_eq!(exit_code(&first), 0, "{}", stdout(&first));
    let text = stdout(&first);
    assert!(text.contains("[pass] [M12, M13]: M23: -1"));
    assert!(text.contains("[pass] [M12, M12]: 0"));

    let second = parafock(&args);
    assert_eq!(first.stdout, second.stdout, "byte-identical reruns");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--suite", "green", "--R", "0"],
        vec!["verify", "--suite", "closure", "--R", "2"],
        vec!["verify", "--suite", "jacobi", "--R", "4", "--depth", "4"],
        vec!["state", "--kind", "zeron", "--epsilon", "1/0"],
        vec!["state", "--kind", "zeron", "--epsilon", "fast"],
        vec!["state", "--kind", "vacuum", "--K", "9", "--nmax", "6"],
        vec!["tableaux", "--n", "13"],
        vec!["tableaux", "--n", "0"],
        vec!["cosmo", "--constants", "/nonexistent/path.json"],
    ] {
        let out = parafock(&args);
        assert_eq!(exit_code(&out), 2, "{args:?}: {}", stdout(&out));
        assert!(out.stdout.is_empty(), "{args:?} wrote a report");
    }
}

#[test]
fn unknown_flags_exit_two() {
    let out = parafock(&["verify", "--frobnicate"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn basis_limit_env_is_enforced_and_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_parafock"))
        .args(["verify", "--suite", "green", "--R", "4", "--p", "1", "--nmax", "6"])
        .env("PARAFOCK_MAX_BASIS", "10")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 2, "limit 10 cannot hold the 210-state basis");

    let out = Command::new(env!("CARGO_BIN_EXE_parafock"))
        .args(["cosmo"])
        .env("PARAFOCK_MAX_BASIS", "banana")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 2, "garbage override fails even without a basis");
}

#[test]
fn zeron_report_passes_and_neutrino_fails_honestly() {
    let zeron = parafock(&[
        "state", "--kind", "zeron", "--K", "2", "--Kprime", "2", "--epsilon", "1/2", "--nmax", "8",
    ]);
    assert_eq!(exit_code(&zeron), 0, "{}", stdout(&zeron));
    let text = stdout(&zeron);
    assert!(text.contains("[pass] P0+P3: constant 1/2i"));

    let neutrino = parafock(&[
        "state", "--kind", "neutrino", "--K", "2", "--epsilon", "1/2", "--nmax", "8",
    ]);
    assert_eq!(exit_code(&neutrino), 1, "{}", stdout(&neutrino));
    let text = stdout(&neutrino);
    assert!(text.contains("[pass] P1:"));
    assert!(text.contains("[pass] P2:"));
    assert!(text.contains("[pass] P0-P3:"));
    assert!(text.contains("[fail] P0+P3:"));
    assert!(text.contains("residual shells 1(1)"));
    assert!(text.ends_with("overall: FAIL\n"));
}

#[test]
fn zero_epsilon_zeron_reduces_to_the_vacuum_report() {
    let out = parafock(&[
        "state", "--kind", "zeron", "--K", "2", "--epsilon", "0/1", "--nmax", "8",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("[pass] P0+P3: constant 0"));
}

#[test]
fn tableaux_json_carries_the_counting_identity() {
    let out = parafock(&["tableaux", "--n", "6", "--r", "2", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["schema"], 1);
    assert_eq!(report["suite"], "tableaux");
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().expect("checks array");
    let sum = checks
        .iter()
        .find(|c| c["id"] == "sum of squared counts")
        .expect("counting identity present");
    assert_eq!(sum["status"], "pass");
    assert!(sum["detail"].as_str().unwrap().contains("720"));
}

#[test]
fn cosmo_json_is_deterministic_and_flags_known_gaps() {
    let first = parafock(&["cosmo", "--json"]);
    let second = parafock(&["cosmo", "--json"]);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid JSON");
    assert_eq!(report["schema"], 1);
    assert_eq!(report["pass"], true);
    let rows = report["cosmo"]["rows"].as_array().expect("cosmo rows");
    let n_e = rows
        .iter()
        .find(|r| r["quantity"] == "urs per electron n_e")
        .expect("electron row");
    assert_eq!(n_e["status"], "Flagged");
    assert_eq!(n_e["decade_difference"], 2);
    let n_total = rows.iter().find(|r| r["quantity"] == "total urs N").expect("N row");
    assert_eq!(n_total["computed"]["exponent"], 120);
}

#[test]
fn scaled_radius_shifts_total_urs_three_decades() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("constants.json");
    let mut file = std::fs::File::create(&path).expect("create constants");
    write!(
        file,
        r#"[{{"name": "cosmic_radius", "mantissa": 1.0, "exponent": 29, "unit": "cm"}}]"#
    )
    .expect("write constants");

    let out = parafock(&["cosmo", "--json", "--constants", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1, "N off by 3 decades must fail the table");
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["pass"], false);
    let rows = report["cosmo"]["rows"].as_array().expect("cosmo rows");
    let n_total = rows.iter().find(|r| r["quantity"] == "total urs N").expect("N row");
    assert_eq!(n_total["computed"]["exponent"], 123);
    assert_eq!(n_total["decade_difference"], 3);
    assert_eq!(n_total["status"], "Fail");
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("report.txt");
    let out = parafock(&["cosmo", "--output", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty(), "report goes to the file, not stdout");
    let written = std::fs::read_to_string(&path).expect("report file");
    assert!(written.ends_with("overall: pass\n"));

    let direct = parafock(&["cosmo"]);
    assert_eq!(written, stdout(&direct), "file and stdout reports agree");
}

#[test]
fn output_to_unwritable_path_exits_two() {
    let out = parafock(&["cosmo", "--output", "/nonexistent-dir/report.txt"]);
    assert_eq!(exit_code(&out), 2);
}

fn file_contains(path: &Path, needle: &str) -> bool {
    std::fs::read_to_string(path).map(|t| t.contains(needle)).unwrap_or(false)
}

#[test]
fn json_reports_have_no_timing_fields() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("green.json");
    let out = parafock(&[
        "verify", "--suite", "green", "--R", "2", "--p", "1", "--nmax", "4", "--json",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(!file_contains(&path, "elapsed"), "timing stays on stderr");
    assert!(file_contains(&path, "\"schema\": 1"));
}
