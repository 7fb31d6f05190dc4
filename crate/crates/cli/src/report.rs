//! Report documents: JSON, CSV and plain-text renderings of a check run.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// JSON Schema every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Decimal string with 15 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.14e}")
}

/// `true` for strings produced by [`format_number`] on a finite value.
pub fn is_number_string(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let Some((mantissa, exponent)) = body.split_once('e') else {
        return false;
    };
    let Some((lead, frac)) = mantissa.split_once('.') else {
        return false;
    };
    let exponent = exponent.strip_prefix('-').unwrap_or(exponent);
    lead.len() == 1
        && lead.bytes().all(|b| b.is_ascii_digit())
        && frac.len() == 14
        && frac.bytes().all(|b| b.is_ascii_digit())
        && !exponent.is_empty()
        && exponent.len() <= 3
        && exponent.bytes().all(|b| b.is_ascii_digit())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: String,
    pub pass: bool,
}

impl CheckResult {
    /// `|actual − expected| ≤ tolerance`.
    pub fn close(name: impl Into<String>, expected: f64, actual: f64, tolerance: f64) -> Self {
        let pass = (actual - expected).abs() <= tolerance;
        Self::numeric(name, expected, actual, tolerance, pass)
    }

    /// `actual ≥ bound − tolerance`.
    pub fn at_least(name: impl Into<String>, bound: f64, actual: f64, tolerance: f64) -> Self {
        let pass = actual >= bound - tolerance;
        Self::numeric(name, bound, actual, tolerance, pass)
    }

    /// Exact agreement of two textual results.
    pub fn same_text(name: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        let (expected, actual) = (expected.into(), actual.into());
        let pass = expected == actual;
        Self {
            name: name.into(),
            expected,
            actual,
            tolerance: format_number(0.0),
            pass,
        }
    }

    fn numeric(name: impl Into<String>, expected: f64, actual: f64, tolerance: f64, pass: bool) -> Self {
        Self {
            name: name.into(),
            expected: format_number(expected),
            actual: format_number(actual),
            tolerance: format_number(tolerance),
            // NaN never passes.
            pass: pass && actual.is_finite(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Vec<CheckResult>,
    pub timestamp: String,
    pub version: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report violates schema: {0}")]
    Schema(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl ReportDocument {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, results: Vec<CheckResult>) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            results,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are plain strings")
    }

    /// Parses and validates a JSON report.
    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        validate_value(&value)?;
        Ok(serde_json::from_value(value)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<(), ReportError> {
        let text = self.to_json();
        validate_value(&serde_json::from_str(&text)?)?;
        std::fs::write(path, text + "\n").map_err(|source| ReportError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), ReportError> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["name", "expected", "actual", "tolerance", "pass"])?;
        for r in &self.results {
            let pass = if r.pass { "true" } else { "false" };
            w.write_record([&r.name, &r.expected, &r.actual, &r.tolerance, pass])?;
        }
        w.flush().map_err(|source| ReportError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Human-readable table.
    pub fn write_text(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "{} (luders {})", self.command, self.version)?;
        for (k, v) in &self.parameters {
            writeln!(out, "  {k} = {v}")?;
        }
        for r in &self.results {
            writeln!(out, "{r}")?;
        }
        let failed = self.results.iter().filter(|r| !r.pass).count();
        writeln!(out, "{} checks, {} failed", self.results.len(), failed)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {:<28} expected {}  actual {}  tol {}",
            self.name, self.expected, self.actual, self.tolerance
        )
    }
}

/// Validates a JSON value against [`REPORT_SCHEMA`].
pub fn validate_value(value: &serde_json::Value) -> Result<(), ReportError> {
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).expect("bundled schema is valid JSON");
    let validator = jsonschema::validator_for(&schema).expect("bundled schema compiles");
    let errors: Vec<String> = validator.iter_errors(value).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(ReportError::Schema(errors.join("; ")))
    }
}
