use serde_json::Value;
use std::process::{Command, Output};

fn mahler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mahler"))
        .args(args)
        .env_remove("MAHLER_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_prints_the_printed_expansion() {
    let o = mahler(&["expand", "g3w4", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "13q + 316q^2 + 2328q^3");
}

#[test]
fn cterms_prints_the_sequence() {
    let o = mahler(&["cterms", "-n", "3", "-M", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 4 28 256 2716");
}

#[test]
fn usage_errors_exit_with_4() {
    assert_eq!(mahler(&["expand", "no_such_form"]).status.code(), Some(4));
    assert_eq!(
        mahler(&["--precision", "32", "cterms", "-n", "2", "-M", "2"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        mahler(&["--series-order", "8", "cterms", "-n", "2", "-M", "2"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(mahler(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(mahler(&["verify"]).status.code(), Some(4));
    assert_eq!(
        mahler(&["double-lvalue", "--j", "5"]).status.code(),
        Some(4)
    );
}

#[test]
fn exact_checks_pass_with_exit_0() {
    let o = mahler(&["check-ode", "-n", "3", "-M", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn verify_report_is_versioned_and_deterministic() {
    let args = [
        "--output",
        "json",
        "verify",
        "--criterion",
        "5",
        "--criterion",
        "1",
    ];
    let a = mahler(&args);
    let b = mahler(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "verify");
    let rows = doc["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        for key in ["check", "computed", "target", "tolerance", "pass"] {
            assert!(r.get(key).is_some(), "row lacks {key}");
        }
    }
}

#[test]
fn numeric_failures_exit_with_2() {
    // The printed meromorphic double L-values carry too few correct digits for
    // their stated tolerances.
    let o = mahler(&["--output", "csv", "verify", "--criterion", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("check,kind,computed,target,tolerance,pass"));
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"seed": 5, "quadrature": {"max_level": 9}}"#).unwrap();
    let o = mahler(&[
        "--seed",
        "1",
        "--output",
        "json",
        "--config",
        path.to_str().unwrap(),
        "cterms",
        "-n",
        "2",
        "-M",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["config"]["seed"], 5);
    assert_eq!(doc["config"]["quadrature"]["max_level"], 9);
    std::fs::write(&path, r#"{"precision_bits": 16}"#).unwrap();
    let o = mahler(&[
        "--config",
        path.to_str().unwrap(),
        "cterms",
        "-n",
        "2",
        "-M",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(4));
    std::fs::write(&path, r#"{"no_such_key": 1}"#).unwrap();
    let o = mahler(&[
        "--config",
        path.to_str().unwrap(),
        "cterms",
        "-n",
        "2",
        "-M",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_mahler"))
            .args(["expand", "f15", "--order", "40"])
            .env("MAHLER_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    let entries = std::fs::read_dir(dir.path().join("expansions"))
        .unwrap()
        .count();
    assert_eq!(entries, 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(
        first.stdout,
        mahler(&["expand", "f15", "--order", "40"]).stdout
    );
}

#[test]
fn moment_rhs_emits_latex() {
    let o = mahler(&["--output", "json", "moment-rhs", "--case", "thm1"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let latex = doc["result"]["latex"]["h_beta"].as_str().unwrap();
    assert!(latex.contains(r"\frac"), "{latex}");
}

#[test]
fn mahler_direct_accepts_power_notation() {
    let o = mahler(&[
        "--seed",
        "1",
        "mahler-direct",
        "-n",
        "2",
        "--samples",
        "2^14",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("16384 samples"));
}
