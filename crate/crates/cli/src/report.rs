//! Machine-readable reports.

use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a field of [`Report`] changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|computed - expected| <= tolerance`
    Abs,
    /// `|computed - expected| <= tolerance * |expected|`
    Rel,
    /// `computed >= expected - tolerance`
    AtLeast,
    /// `computed <= expected + tolerance`
    AtMost,
}

impl Comparison {
    pub fn holds(self, computed: f64, expected: f64, tolerance: f64) -> bool {
        match self {
            Comparison::Abs => (computed - expected).abs() <= tolerance,
            Comparison::Rel => (computed - expected).abs() <= tolerance * expected.abs(),
            Comparison::AtLeast => computed >= expected - tolerance,
            Comparison::AtMost => computed <= expected + tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, computed: f64, expected: f64, comparison: Comparison, tolerance: f64) -> Check {
        Check {
            name: name.into(),
            computed,
            expected,
            comparison,
            tolerance,
            pass: comparison.holds(computed, expected, tolerance),
        }
    }

    /// `computed <= bound`.
    pub fn at_most(name: impl Into<String>, computed: f64, bound: f64) -> Check {
        Check::new(name, computed, bound, Comparison::AtMost, 0.0)
    }

    /// `computed > 0`.
    pub fn positive(name: impl Into<String>, computed: f64) -> Check {
        Check::new(name, computed, f64::MIN_POSITIVE, Comparison::AtLeast, 0.0)
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub library_version: &'static str,
    pub command: Value,
    pub checks: Vec<Check>,
    pub result: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl Report {
    pub fn new(command: Value, checks: Vec<Check>, result: Value) -> Report {
        let pass = checks.iter().all(|c| c.pass);
        Report {
            schema_version: SCHEMA_VERSION,
            library_version: htgeom::VERSION,
            command,
            checks,
            result,
            pass,
            runtime_ms: None,
        }
    }
}
