use std::process::Command;

use kahlerlab::backends::FixtureKind;
use kahlerlab::check::{registry, Status};
use kahlerlab_cli::{explain, run, summary_csv, write_reports, CliError, Report, RunConfig, SuiteSel};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kahlerlab"))
}

fn small() -> RunConfig {
    RunConfig {
        suites: vec![SuiteSel::Identity],
        fixtures: vec![FixtureKind::Flat2],
        checks: vec!["ID-DIV-EV".into(), "ID-SHARP".into()],
        ..RunConfig::default()
    }
}

#[test]
fn registry_is_large_and_unique() {
    let ids: Vec<_> = registry().iter().map(|c| c.id).collect();
    assert!(ids.len() >= 40, "{} checks", ids.len());
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
}

#[test]
fn config_rejects_unknown_fields_with_position() {
    let err = RunConfig::from_json("{\n  \"suites\": [\"identity\"],\n  \"bogus\": 1\n}").unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("line 3"), "{msg}");
    assert!(msg.contains("bogus"), "{msg}");
}

#[test]
fn config_rejects_bad_values() {
    for text in [
        r#"{"tolerance_scale": 0}"#,
        r#"{"tolerance_scale": -1}"#,
        r#"{"tolerances": {"first": 0.0}}"#,
        r#"{"checks": ["ID-NOPE"]}"#,
        r#"{"seeds": []}"#,
        r#"{"suites": ["geometry"]}"#,
        r#"{"fixtures": ["TORUS"]}"#,
    ] {
        assert!(matches!(RunConfig::from_json(text), Err(CliError::Config(_))), "{text}");
    }
}

#[test]
fn config_defaults_and_overrides() {
    let cfg = RunConfig::from_json(r#"{"suites": ["soliton"], "seeds": [3, 4], "fd": {"base_step": 0.02}}"#).unwrap();
    assert_eq!(cfg.suites, vec![SuiteSel::Soliton]);
    assert_eq!(cfg.seeds, vec![3, 4]);
    assert_eq!(cfg.fd.base_step, 0.02);
    assert_eq!(cfg.fixtures.len(), 5);
    assert!(cfg.selected().iter().all(|c| c.id.starts_with("S-")));
}

#[test]
fn class_tolerances_override_defaults() {
    let mut cfg = small();
    cfg.tolerances.identity_flat = Some(1e-3);
    cfg.tolerance_scale = 2.0;
    let r = run(&cfg).unwrap();
    assert!(r.results.iter().all(|x| x.tolerance == 2e-3));
}

#[test]
fn run_is_deterministic_and_valid() {
    let strip = |mut r: Report| {
        r.results.iter_mut().for_each(|x| x.runtime_ms = 0);
        r
    };
    let a = run(&small()).unwrap();
    a.validate().unwrap();
    assert_eq!(a.summary.total, 2);
    assert_eq!(a.summary.passed, 2);
    assert_eq!(a.exit_code(), 0);
    let b = run(&RunConfig { jobs: 1, ..small() }).unwrap();
    assert_eq!(strip(a), strip(b));
}

#[test]
fn tiny_tolerance_fails() {
    let r = run(&RunConfig { tolerance_scale: 1e-20, fixtures: vec![FixtureKind::Pert2], checks: vec!["ID-DIV-TR".into()], ..small() })
        .unwrap();
    assert_eq!(r.summary.failed, 1);
    assert_eq!(r.exit_code(), 1);
    assert!(r.results[0].reason.is_some());
}

#[test]
fn reports_written_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&small()).unwrap();
    let files = write_reports(&r, dir.path()).unwrap();
    assert_eq!(files.len(), 4);
    let back: Report = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(back, r);
    let csv = summary_csv(&r).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.lines().nth(1).unwrap().starts_with("ID-DIV-EV,FLAT2,1,pass,"));
}

#[test]
fn explain_lists_metadata() {
    let text = explain("S-LAMBDA").unwrap();
    assert!(text.contains("fixtures:  FS"));
    assert!(text.contains("tolerance: fixed"));
    assert!(text.contains(&kahlerlab::check::conventions_hash()));
    assert!(matches!(explain("S-NOPE"), Err(CliError::NotFound(_))));
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = bin()
        .args(["run", "--suite", "identity", "--fixture", "FLAT2", "--seed", "2", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(dir.path().join("table.txt").exists());
    assert!(dir.path().join("convergence.csv").exists());

    let fail = bin().args(["run", "--suite", "identity", "--fixture", "PERT2", "--tolerance-scale", "1e-20"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));

    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{\"suites\": [").unwrap();
    let bad = bin().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("config-error"));

    assert_eq!(bin().args(["explain", "NOPE"]).output().unwrap().status.code(), Some(2));
    let list = bin().arg("list").output().unwrap();
    assert!(String::from_utf8_lossy(&list.stdout).lines().count() >= 40);
}

#[test]
fn skipped_results_carry_reasons() {
    let cfg = RunConfig {
        suites: vec![SuiteSel::Soliton],
        fixtures: vec![FixtureKind::Flat2],
        checks: vec!["S-CHAR".into()],
        ..RunConfig::default()
    };
    let r = run(&cfg).unwrap();
    assert_eq!(r.results[0].status, Status::Skipped);
    r.validate().unwrap();
}
