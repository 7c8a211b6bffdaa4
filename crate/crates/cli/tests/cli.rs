use std::process::{Command, Output};

use serde_json::Value;
use supclass_core::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supclass"))
        .args(args)
        .env_remove("SC_MAX_Q")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Report, String) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(&a);
    let s = String::from_utf8(out.stdout).unwrap();
    let r: Report = serde_json::from_str(&s).unwrap_or_else(|e| panic!("{e}: {s}"));
    (out.status.code().unwrap(), r, s)
}

#[test]
fn mul_b_c_at_seven() {
    let (code, r, _) = json(&["mul", "--q", "7", "--x", "B", "--y", "C"]);
    assert_eq!(code, 0);
    assert_eq!(r.results, serde_json::json!({"C": 6}));
    assert_eq!(r.command, "mul");
    assert_eq!(r.q, 7);
    assert!(r.passed());
}

#[test]
fn mul_accepts_combinations() {
    let (code, r, _) = json(&["mul", "--q", "5", "--x", "1/4*A", "--y", "D+,-E-"]);
    assert_eq!(code, 0);
    assert_eq!(r.results, serde_json::json!({"D+": 1, "E-": -1}));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["mul", "--q", "2", "--x", "B", "--y", "C"],
        vec!["mul", "--q", "6", "--x", "B", "--y", "C"],
        vec!["mul", "--q", "5", "--x", "Q", "--y", "C"],
        vec!["table", "--q", "5", "--bogus"],
        vec!["scheme", "--q", "3"],
        vec!["scheme", "--q", "5", "--variant", "nope"],
        vec!["verify", "--q", "2"],
        vec!["verify", "--q", "11"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_round_trips_byte_identical() {
    for args in [
        vec!["table", "--q", "4"],
        vec!["idempotents", "--q", "5"],
        vec!["fusion", "--q", "7"],
        vec!["chars", "--q", "5"],
        vec!["scheme", "--q", "4", "--variant", "tilde"],
        vec!["classes", "--q", "9"],
    ] {
        let (code, r, s) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(r.to_canonical_json() + "\n", s, "{args:?}");
        let v: Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["checks", "command", "q", "results", "seed", "version"]
        );
    }
}

#[test]
fn rationals_are_strings() {
    let (_, r, _) = json(&["idempotents", "--q", "3"]);
    assert_eq!(r.results["pi"]["pi1"]["A"], "1/24");
    assert_eq!(r.results["traces"]["pi4"], 6);
}

#[test]
fn text_has_same_numbers_as_json() {
    let (_, r, _) = json(&["mul", "--q", "5", "--x", "C", "--y", "C"]);
    let text = String::from_utf8(run(&["mul", "--q", "5", "--x", "C", "--y", "C"]).stdout).unwrap();
    for (k, v) in r.results.as_object().unwrap() {
        assert!(
            text.contains(&format!("{k}: {v}")),
            "{k}: {v} missing from\n{text}"
        );
    }
}

#[test]
fn out_file_and_seed() {
    let path = std::env::temp_dir().join(format!("supclass-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = run(&[
        "verify", "--q", "3", "--seed", "42", "--format", "json", "--out", p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(r.seed, 42);
    assert!(r.checks.iter().any(|c| c.name.contains("spot")));
}

#[test]
fn corrupted_fixtures_exit_1() {
    let (code, r, _) = json(&["verify", "--q", "5", "--corrupt", "table"]);
    assert_eq!(code, 1);
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed()).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].witness["pair"], serde_json::json!(["B", "C"]));
    let (code, r, _) = json(&["verify", "--q", "4", "--corrupt", "adjacency"]);
    assert_eq!(code, 1);
    assert!(r
        .checks
        .iter()
        .any(|c| !c.passed() && c.name.starts_with("corrupt adjacency")));
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_supclass"))
        .args(["classes", "--q", "5"])
        .env("SC_MAX_Q", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_supclass"))
        .args(["verify", "--q", "11"])
        .env("SC_MAX_Q", "11")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
