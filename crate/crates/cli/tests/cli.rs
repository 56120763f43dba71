//! End-to-end checks of the `lel` binary: subcommand surface, exit codes,
//! file formats, and byte-identical reports across runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn lel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("lel-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn enum_dumps_level_sequences() {
    let dump = tmp("enum.txt");
    let out = lel(&["enum", "--n", "6", "--dump", dump.to_str().unwrap()]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&dump).unwrap();
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l.starts_with("6:0,1,")));
    // The path comes first, the star last.
    assert_eq!(lines[0], "6:0,1,2,3,1,2");
    assert_eq!(lines[5], "6:0,1,1,1,1,1");
    assert!(stdout(&out).contains("\"cases_checked\": 6"));
    std::fs::remove_file(&dump).ok();
}

#[test]
fn invariants_csv_and_json() {
    let csv_path = tmp("inv.csv");
    let out = lel(&[
        "invariants",
        "--n",
        "4",
        "--out",
        csv_path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = body.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,tree_id,level_sequence,c0,c1,c2,c3,c4,lel,lee,ie,wiener"
    );
    assert_eq!(lines.count(), 2);
    // Coefficients appear as decimal integers, never floats.
    assert!(body.contains(",1,6,10,4,0,"));

    let json_path = tmp("inv.json");
    let out = lel(&[
        "invariants",
        "--n",
        "4",
        "--out",
        json_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&json_path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 2);
    assert!(parsed[0]["c"].as_array().unwrap().len() == 5);
    std::fs::remove_file(&csv_path).ok();
    std::fs::remove_file(&json_path).ok();
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "--quiet",
        "verify",
        "jacobian",
        "--n-min",
        "2",
        "--n-max",
        "4",
        "--samples",
        "10",
        "--seed",
        "7",
    ];
    let a = lel(&args);
    let b = lel(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("\"check\": \"jacobian\""));
    assert!(stdout(&a).contains("\"seed\": 7"));
}

#[test]
fn verify_order_passes_and_reports_schema() {
    let out = lel(&["--quiet", "verify", "order", "--n", "6", "--slack", "1e-9"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["check", "params", "cases_checked", "violations", "status"] {
        assert!(parsed.get(key).is_some(), "missing {key}");
    }
    assert_eq!(parsed["status"], "pass");
}

#[test]
fn hunt_lee_finds_predicted_inversions() {
    let out = lel(&[
        "--quiet", "hunt", "lee", "--n-min", "6", "--n-max", "8", "--slack", "1e-9",
    ]);
    assert!(out.status.success(), "hunt must find (S_n, P_n) and pass");
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["status"], "pass");
    let violations = parsed["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    assert!(violations.iter().any(|v| v["star_path"] == true));
}

#[test]
fn probe_closure_converges_at_default_steps() {
    let out = lel(&["--quiet", "probe", "closure", "--mu", "4,1,1"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["status"], "pass");
    assert_eq!(parsed["cases_checked"], 20);
    // Too few steps: LEL has not met the Cauchy tolerance yet, and the
    // report says so.
    let short = lel(&[
        "--quiet", "probe", "closure", "--mu", "4,1,1", "--steps", "12",
    ]);
    assert_eq!(short.status.code(), Some(1));
}

#[test]
fn usage_and_input_errors_exit_2() {
    // Unknown flag: clap usage error.
    assert_eq!(lel(&["enum", "--bogus"]).status.code(), Some(2));
    // Unparsable probe input.
    assert_eq!(
        lel(&["probe", "closure", "--mu", "junk"]).status.code(),
        Some(2)
    );
    // Order above the enumeration ceiling.
    assert_eq!(lel(&["enum", "--n", "23"]).status.code(), Some(2));
    // Campaign parameters the sampler cannot satisfy.
    assert_eq!(
        lel(&["verify", "jacobian", "--min-gap", "2.0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lel(&["verify", "gradient", "--fd-step", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn jobs_flag_is_accepted() {
    let out = lel(&[
        "--jobs",
        "2",
        "--quiet",
        "verify",
        "lemmas",
        "--n-max",
        "3",
        "--samples",
        "5",
    ]);
    assert!(out.status.success());
}
