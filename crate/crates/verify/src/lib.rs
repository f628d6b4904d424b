//! Scenario-driven verification harness: loads a scenario, runs the selected
//! suites and produces a [`report::Report`].

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

pub mod report;
pub mod scenario;
pub mod suites;

use report::{Check, Report};
use scenario::{Resolved, Scenario};

/// Anything wrong with the input; maps to exit status 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot parse scenario: {0}")]
    Parse(String),
    #[error("cannot read scenario: {0}")]
    Io(String),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("unknown suite `{0}` (see `verify list-suites`)")]
    UnknownSuite(String),
}

/// Scenarios shipped with the tool, addressable by name.
pub const BUILTIN: &[(&str, &str)] = &[
    ("minkowski-plane-wave", include_str!("../scenarios/minkowski-plane-wave.json")),
    ("boosted-plane-wave", include_str!("../scenarios/boosted-plane-wave.json")),
    ("torsion-toy", include_str!("../scenarios/torsion-toy.json")),
    ("gauge-sine", include_str!("../scenarios/gauge-sine.json")),
    ("lorentz-local-rotor", include_str!("../scenarios/lorentz-local-rotor.json")),
];

/// Reads `config` as a file path, falling back to a built-in scenario name.
pub fn load(config: &str) -> Result<Scenario, ConfigError> {
    let path = Path::new(config);
    if path.exists() {
        return Scenario::from_path(path);
    }
    match BUILTIN.iter().find(|(name, _)| *name == config) {
        Some((_, text)) => Scenario::from_json(text),
        None => Err(ConfigError::Io(format!("{config}: no such file or built-in scenario"))),
    }
}

/// Command-line overrides applied on top of a scenario.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub suites: Vec<String>,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
}

pub fn prepare(mut scenario: Scenario, overrides: &Overrides) -> Result<Resolved, ConfigError> {
    if !overrides.suites.is_empty() {
        scenario.suites = overrides.suites.clone();
    }
    if let Some(g) = overrides.grid {
        scenario.grid = g;
    }
    if let Some(s) = overrides.seed {
        scenario.seed = s;
    }
    scenario.resolve()
}

/// A finished run: the report plus per-suite wall times, which stay out of
/// the report so that it is reproducible.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub timings: Vec<(&'static str, Duration)>,
}

/// Runs every selected suite, concurrently, and assembles the report in
/// catalog order.
pub fn run(resolved: &Resolved) -> Outcome {
    let sc = &resolved.scenario;
    let ctx = suites::Context::new(resolved, sc.grid, sc.transport_steps, sc.seed);
    let results: Vec<(Vec<Check>, Duration)> = resolved
        .suites
        .par_iter()
        .map(|name| {
            let info = suites::find(name).expect("suite names are validated");
            let start = Instant::now();
            let checks = complete(info, suites::run_suite(info, &ctx));
            (checks, start.elapsed())
        })
        .collect();
    let mut checks = Vec::new();
    let mut timings = Vec::new();
    for (name, (c, t)) in resolved.suites.iter().zip(results) {
        checks.extend(c);
        timings.push((*name, t));
    }
    let suites = resolved.suites.iter().map(|s| s.to_string()).collect();
    Outcome { report: Report::new(&sc.name, sc.seed, sc.grid, sc.transport_steps, suites, checks), timings }
}

/// Orders the checks as in the catalog and turns a missing one into a
/// failure.
fn complete(info: &suites::SuiteInfo, mut checks: Vec<Check>) -> Vec<Check> {
    let mut out = Vec::with_capacity(info.checks.len());
    for name in info.checks {
        match checks.iter().position(|c| c.name == *name) {
            Some(k) => out.push(checks.remove(k)),
            None => out.push(Check::errored(info.name, name, "", 0.0, "check was not evaluated".into())),
        }
    }
    for extra in checks {
        out.push(Check { passed: false, note: Some("check is not in the catalog".into()), ..extra });
    }
    out
}

/// Writes `<scenario>.report.json` into `dir`.
pub fn write_report(report: &Report, dir: &Path) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.report.json", report.scenario));
    std::fs::write(&path, report.to_json())?;
    Ok(path)
}

/// Caps the global thread pool at `VERIFY_THREADS` when set.
pub fn configure_threads() -> Result<(), ConfigError> {
    let Ok(value) = std::env::var("VERIFY_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| ConfigError::Invalid(format!("VERIFY_THREADS must be a positive integer, got `{value}`")))?;
    // A pool that already exists (e.g. in tests) is left as it is.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// The suite catalog as printed by `verify list-suites`.
pub fn catalog() -> String {
    let mut out = String::new();
    for s in &suites::SUITES {
        out.push_str(&format!("{:<12} {}\n", s.name, s.description));
        out.push_str(&format!("{:<12}   exercises: {}\n", "", s.covers));
        out.push_str(&format!("{:<12}   checks: {}\n", "", s.checks.join(", ")));
    }
    out
}
