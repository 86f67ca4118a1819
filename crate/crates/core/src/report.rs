//! Check rows shared by the acceptance suite and the command line.

use crate::analytics::fmt_float;
use rug::Float;
use serde::{Deserialize, Serialize};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub kind: CheckKind,
    pub computed: String,
    pub target: String,
    pub tolerance: Option<String>,
    pub pass: bool,
}

impl CheckRow {
    /// |computed - target| < tol.
    pub fn numeric(check: impl Into<String>, computed: &Float, target: &Float, tol: f64) -> Self {
        let diff = Float::with_val(computed.prec(), computed - target).abs();
        let pass = diff.is_finite() && diff < tol;
        CheckRow {
            check: check.into(),
            kind: CheckKind::Numeric,
            computed: fmt_float(computed),
            target: fmt_float(target),
            tolerance: Some(format!("{tol:e}")),
            pass,
        }
    }

    /// A residual that must be below tol.
    pub fn residual(check: impl Into<String>, residual: &Float, tol: f64) -> Self {
        let zero = Float::new(residual.prec());
        let mut row = CheckRow::numeric(check, residual, &zero, tol);
        row.computed = residual.to_string_radix(10, Some(3));
        row.target = "0".into();
        row
    }

    pub fn exact(
        check: impl Into<String>,
        computed: impl ToString,
        target: impl ToString,
        pass: bool,
    ) -> Self {
        CheckRow {
            check: check.into(),
            kind: CheckKind::Exact,
            computed: computed.to_string(),
            target: target.to_string(),
            tolerance: None,
            pass,
        }
    }

    /// A failed computation recorded as a row instead of aborting the report.
    pub fn error(check: impl Into<String>, kind: CheckKind, err: impl ToString) -> Self {
        CheckRow {
            check: check.into(),
            kind,
            computed: format!("error: {}", err.to_string()),
            target: String::new(),
            tolerance: None,
            pass: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub rows: Vec<CheckRow>,
}

impl Default for Report {
    fn default() -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            rows: Vec::new(),
        }
    }
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = CheckRow>) {
        self.rows.extend(rows);
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckRow> {
        self.rows.iter().find(|r| !r.pass)
    }

    /// 0 when every row passes, 3 if an exact row fails, otherwise 2.
    pub fn exit_code(&self) -> i32 {
        if self
            .rows
            .iter()
            .any(|r| !r.pass && r.kind == CheckKind::Exact)
        {
            3
        } else if self.all_pass() {
            0
        } else {
            2
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let tol = r
                .tolerance
                .as_deref()
                .map(|t| format!(" (tol {t})"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{} {}: computed {} target {}{}\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.computed,
                r.target,
                tol
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let esc = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        let mut out = String::from("check,kind,computed,target,tolerance,pass\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                esc(&r.check),
                match r.kind {
                    CheckKind::Exact => "exact",
                    CheckKind::Numeric => "numeric",
                },
                esc(&r.computed),
                esc(&r.target),
                esc(r.tolerance.as_deref().unwrap_or("")),
                r.pass
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_rank_exact_failures_first() {
        let one = Float::with_val(64, 1);
        let mut r = Report::new();
        r.extend([
            CheckRow::exact("a", 1, 1, true),
            CheckRow::numeric("b", &one, &one, 1e-3),
        ]);
        assert_eq!(r.exit_code(), 0);
        r.extend([CheckRow::numeric("c", &one, &Float::with_val(64, 2), 1e-3)]);
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.first_failure().unwrap().check, "c");
        r.extend([CheckRow::exact("d", 1, 2, false)]);
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn non_finite_values_fail() {
        let nan = Float::with_val(64, rug::float::Special::Nan);
        assert!(!CheckRow::residual("nan", &nan, 1.0).pass);
    }

    #[test]
    fn csv_quotes_fields() {
        let mut r = Report::new();
        r.extend([CheckRow::exact("x, \"y\"", 1, 1, true)]);
        assert!(r.to_csv().contains("\"x, \"\"y\"\"\""));
    }
}
