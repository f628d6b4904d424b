use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// How a measured value is judged.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum Rule {
    /// Pass when `measured ≤ tolerance`.
    AtMost,
    /// Pass when `measured ≥ tolerance`.
    AtLeast,
    /// Diagnostic: pass when `|measured − expected| ≤ tolerance`.
    Expected { expected: f64 },
}

/// One named check and its verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    /// The identity being checked.
    pub formula: String,
    /// `null` in the JSON when the measurement is not finite.
    pub measured: Option<f64>,
    pub tolerance: f64,
    #[serde(flatten)]
    pub rule: Rule,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(suite: &str, name: &str, formula: &str, measured: f64, tolerance: f64, rule: Rule) -> Self {
        let passed = match rule {
            Rule::AtMost => measured <= tolerance,
            Rule::AtLeast => measured >= tolerance,
            Rule::Expected { expected } => (measured - expected).abs() <= tolerance,
        };
        Check {
            suite: suite.into(),
            name: name.into(),
            formula: formula.into(),
            measured: measured.is_finite().then_some(measured),
            tolerance,
            rule,
            passed,
            note: None,
        }
    }

    /// A check whose evaluation raised an error.
    pub fn errored(suite: &str, name: &str, formula: &str, tolerance: f64, error: String) -> Self {
        Check {
            suite: suite.into(),
            name: name.into(),
            formula: formula.into(),
            measured: None,
            tolerance,
            rule: Rule::AtMost,
            passed: false,
            note: Some(error),
        }
    }

    pub fn id(&self) -> String {
        format!("{}/{}", self.suite, self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Structured outcome of one run. Contains no timing, so a fixed scenario and
/// seed always serialise to the same bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub grid: usize,
    pub transport_steps: usize,
    pub suites: Vec<String>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub passed: bool,
}

impl Report {
    pub fn new(scenario: &str, seed: u64, grid: usize, transport_steps: usize, suites: Vec<String>, checks: Vec<Check>) -> Self {
        let passed_count = checks.iter().filter(|c| c.passed).count();
        let summary = Summary { total: checks.len(), passed: passed_count, failed: checks.len() - passed_count };
        Report {
            scenario: scenario.into(),
            seed,
            grid,
            transport_steps,
            suites,
            passed: summary.failed == 0,
            checks,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialises");
        text.push('\n');
        text
    }

    /// One line per check plus a summary line.
    pub fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let measured = c.measured.map_or("non-finite".to_string(), |m| format!("{m:.3e}"));
            let op = match c.rule {
                Rule::AtMost => "<=".to_string(),
                Rule::AtLeast => ">=".to_string(),
                Rule::Expected { expected } => format!("~ {expected:.3e} within"),
            };
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{verdict}  {:<44} {measured} {op} {:.1e}", c.id(), c.tolerance);
            if let Some(note) = &c.note {
                let _ = write!(out, "  ({note})");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}: {} checks, {} passed, {} failed",
            self.scenario, self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}
