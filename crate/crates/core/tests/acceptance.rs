//! The twelve acceptance criteria, one test each. Every test prints its rows
//! followed by a single `criterion N: PASS|FAIL` line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use mahler_core::verify::{criterion, VerifyConfig, CRITERIA};

fn run(k: usize) {
    let rows = criterion(k, &VerifyConfig::default());
    assert!(!rows.is_empty(), "criterion {k} produced no rows");
    let mut out = String::new();
    for r in &rows {
        let tol = r
            .tolerance
            .as_deref()
            .map(|t| format!(" (tol {t})"))
            .unwrap_or_default();
        out.push_str(&format!(
            "    {} {}: computed {} target {}{}\n",
            if r.pass { "ok  " } else { "FAIL" },
            r.check,
            r.computed,
            r.target,
            tol
        ));
    }
    let pass = rows.iter().all(|r| r.pass);
    out.push_str(&format!(
        "criterion {k}: {} ({})\n",
        if pass { "PASS" } else { "FAIL" },
        CRITERIA[k - 1]
    ));
    print!("{out}");
    let failed: Vec<&str> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.check.as_str())
        .collect();
    assert!(pass, "criterion {k} failed: {}", failed.join("; "));
}

#[test]
fn criterion_01_constant_terms() {
    run(1);
}

#[test]
fn criterion_02_exact_expansions() {
    run(2);
}

#[test]
fn criterion_03_operator_identities() {
    run(3);
}

#[test]
fn criterion_04_moment_oracle() {
    run(4);
}

#[test]
fn criterion_05_boundary_terms() {
    run(5);
}

#[test]
fn criterion_06_cm_constants() {
    run(6);
}

#[test]
fn criterion_07_meromorphic_double_lvalues() {
    run(7);
}

#[test]
fn criterion_08_m_p4_relation() {
    run(8);
}

#[test]
fn criterion_09_holomorphic_relation() {
    run(9);
}

#[test]
fn criterion_10_five_variable_conjecture() {
    run(10);
}

#[test]
fn criterion_11_pointwise_identity() {
    run(11);
}

#[test]
fn criterion_12_direct_sampling() {
    run(12);
}
