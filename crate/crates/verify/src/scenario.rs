//! Scenario files: a JSON object describing the spacetime setup, the Dirac
//! parameters, the unknown field and which suites to run.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sta_core::clifford::Multivector;
use sta_core::dirac::{make_plane_wave, DiracParams};
use sta_core::field::FieldExpr;
use sta_core::spacetime::{Chart, CoefficientTable, Connection, Curve, FrameField, Setup};

use crate::suites::SUITES;
use crate::ConfigError;

pub const DEFAULT_GRID: usize = 9;
pub const DEFAULT_STEPS: usize = 256;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// One scenario as read from disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub setup: SetupSpec,
    #[serde(default)]
    pub params: ParamsSpec,
    #[serde(default)]
    pub unknown: UnknownSpec,
    /// Suites to run; all of them when empty.
    #[serde(default)]
    pub suites: Vec<String>,
    /// `"default"` applies to scenario residuals; any other key overrides
    /// the bound of the check with that name.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_steps")]
    pub transport_steps: usize,
    #[serde(default)]
    pub seed: u64,
    /// Extra gauge functions for the gauge suite.
    #[serde(default)]
    pub gauge: Vec<FieldExpr>,
    /// Rotor field for the Lorentz suite, in own-frame components.
    #[serde(default)]
    pub rotor: Option<FieldExpr>,
    /// Curve for the transport suite.
    #[serde(default)]
    pub curve: Option<Curve>,
    /// When set, the scenario residuals are diagnostics expected to equal
    /// this value instead of vanishing.
    #[serde(default)]
    pub expect_residual: Option<f64>,
}

fn default_grid() -> usize {
    DEFAULT_GRID
}

fn default_steps() -> usize {
    DEFAULT_STEPS
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupSpec {
    #[serde(default = "Chart::unit_box")]
    pub chart: Chart,
    #[serde(default)]
    pub frame: FrameField,
    #[serde(default)]
    pub connection: ConnectionSpec,
}

impl Default for SetupSpec {
    fn default() -> Self {
        SetupSpec { chart: Chart::unit_box(), frame: FrameField::fiducial(), connection: ConnectionSpec::Zero }
    }
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionSpec {
    #[default]
    Zero,
    /// Listed entries `Γ_abc`; a missing mirror `Γ_acb` is filled in as `−Γ_abc`.
    Coefficients(Vec<CoefficientEntry>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientEntry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: FieldExpr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    #[serde(default = "default_mass")]
    pub m: f64,
    #[serde(default)]
    pub q: f64,
    #[serde(default)]
    pub potential: FieldExpr,
}

fn default_mass() -> f64 {
    1.0
}

impl Default for ParamsSpec {
    fn default() -> Self {
        ParamsSpec { m: default_mass(), q: 0.0, potential: FieldExpr::zero() }
    }
}

/// The field whose residuals the triad suite measures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknownSpec {
    /// `U exp(−e^21 m (n·x))` with the scenario mass.
    PlaneWave {
        #[serde(default = "unit_rotor")]
        boost: Multivector,
    },
    Field(FieldExpr),
}

fn unit_rotor() -> Multivector {
    Multivector::ONE
}

impl Default for UnknownSpec {
    fn default() -> Self {
        UnknownSpec::PlaneWave { boost: Multivector::ONE }
    }
}

/// A validated scenario with its setup built.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub scenario: Scenario,
    pub setup: Setup,
    pub params: DiracParams,
    pub unknown: FieldExpr,
    pub suites: Vec<&'static str>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Tolerance for the check `name`, falling back to `default`.
    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    pub fn residual_tolerance(&self) -> f64 {
        self.tolerance("default", DEFAULT_TOLERANCE)
    }

    /// Validates every field and builds the setup.
    pub fn resolve(self) -> Result<Resolved, ConfigError> {
        let invalid = |msg: String| ConfigError::Invalid(msg);
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return Err(invalid(format!("scenario name `{}` must be non-empty ASCII letters, digits, '-' or '_'", self.name)));
        }
        for (key, tol) in &self.tolerances {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(invalid(format!("tolerance `{key}` must be positive, got {tol}")));
            }
        }
        if self.grid < 2 {
            return Err(invalid(format!("grid must have at least 2 points per axis, got {}", self.grid)));
        }
        if self.transport_steps < 16 {
            return Err(invalid(format!("transport_steps must be at least 16, got {}", self.transport_steps)));
        }
        if let Some(r) = self.expect_residual {
            if !(r.is_finite() && r >= 0.0) {
                return Err(invalid(format!("expect_residual must be non-negative, got {r}")));
            }
        }
        let mut suites = Vec::new();
        for name in &self.suites {
            let known = SUITES.iter().find(|s| s.name == name).ok_or_else(|| ConfigError::UnknownSuite(name.clone()))?;
            if !suites.contains(&known.name) {
                suites.push(known.name);
            }
        }
        if suites.is_empty() {
            suites = SUITES.iter().map(|s| s.name).collect();
        }
        let connection = match &self.setup.connection {
            ConnectionSpec::Zero => Connection::Flat,
            ConnectionSpec::Coefficients(entries) => Connection::Coefficients(
                CoefficientTable::from_entries(entries.iter().map(|e| (e.a, e.b, e.c, e.value.clone())))
                    .map_err(|e| invalid(e.to_string()))?,
            ),
        };
        let setup = Setup::new(self.setup.chart.clone(), self.setup.frame.clone(), connection)
            .map_err(|e| invalid(format!("setup: {e}")))?;
        let params = DiracParams { m: self.params.m, q: self.params.q, potential: self.params.potential.clone() };
        let check_grid = setup.chart.grid(3);
        params.validate(&check_grid).map_err(|e| invalid(format!("params: {e}")))?;
        let unknown = match &self.unknown {
            UnknownSpec::PlaneWave { boost } => {
                make_plane_wave(params.m, boost).map_err(|e| invalid(format!("unknown: {e}")))?.into_expr()
            }
            UnknownSpec::Field(expr) => {
                expr.validate().map_err(|e| invalid(format!("unknown: {e}")))?;
                expr.clone()
            }
        };
        let odd = unknown.max_odd_part(&check_grid.points);
        if odd > 1e-10 {
            return Err(invalid(format!("unknown must be an even field (odd part {odd:e})")));
        }
        for chi in &self.gauge {
            chi.validate().map_err(|e| invalid(format!("gauge function: {e}")))?;
            let stray = check_grid.sup(|x| (chi.eval(x) - chi.eval(x).grade_proj(0)).sup_norm());
            if stray > 0.0 {
                return Err(invalid("gauge functions must be scalar fields".into()));
            }
        }
        if let Some(u) = &self.rotor {
            u.validate().map_err(|e| invalid(format!("rotor: {e}")))?;
            sta_core::spacetime::check_rotor(u, &check_grid).map_err(|e| invalid(format!("rotor: {e}")))?;
        }
        if let Some(curve) = &self.curve {
            for k in 0..=64 {
                let t = k as f64 / 64.0;
                if !setup.chart.contains(&curve.position(t)) {
                    return Err(invalid(format!("curve leaves the chart at t = {t}")));
                }
            }
        }
        Ok(Resolved { scenario: self, setup, params, unknown, suites })
    }
}
