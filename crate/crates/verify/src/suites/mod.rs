//! The seven verification suites.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sta_core::field::FieldExpr;
use sta_core::spacetime::{Curve, Grid, Setup};
use sta_core::{sample, Error};

use crate::report::{Check, Rule};
use crate::scenario::Resolved;

mod algebra;
mod bilinears;
mod derivatives;
mod gauge;
mod lorentz;
mod transport;
mod triad;

/// Catalog entry for one suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub description: &'static str,
    /// Identities the suite exercises.
    pub covers: &'static str,
    /// Names of every check the suite emits, in report order.
    pub checks: &'static [&'static str],
    run: fn(&Context) -> Vec<Check>,
}

pub static SUITES: [SuiteInfo; 7] = [
    SuiteInfo {
        name: "algebra",
        description: "blade products, grades, reversion, idempotents, ideals and the gamma representation",
        covers: "E^aE^b + E^bE^a = 2η^ab; associativity; e² = e, f² = f; ψ ↔ ψe; ρ(ab) = ρ(a)ρ(b)",
        checks: algebra::CHECKS,
        run: algebra::run,
    },
    SuiteInfo {
        name: "derivatives",
        description: "Leibniz laws, ideal preservation and the two forms of the effective derivative",
        covers: "∇_V(AB) = (∇_V A)B + A∇_V B; ∇ˢ(AΨ), ∇ˢ(ΦA); ∇^(s)(Uψ); ∇ˢ_a 1ʳ = −½ 1ʳ ω_a",
        checks: derivatives::CHECKS,
        run: derivatives::run,
    },
    SuiteInfo {
        name: "transport",
        description: "parallel transport of the three section kinds along a curve",
        covers: "dA/dt = −½[ω, A], dΨ/dt = −½ωΨ, dΦ/dt = ½Φω; fourth-order convergence",
        checks: transport::CHECKS,
        run: transport::run,
    },
    SuiteInfo {
        name: "dirac-triad",
        description: "residuals of the representative, left spin-Clifford, complex-ideal and column forms",
        covers: "e^a∇^(s)_a ψ e^21 − qAψ − mψe^0; DˢΨe^21 − mΨe^0 − qAΨ; c DˢΨ − mΨ − qAΨ; cγ^a(∇_a + cqA_a) − m",
        checks: triad::CHECKS,
        run: triad::run,
    },
    SuiteInfo {
        name: "gauge",
        description: "electromagnetic gauge covariance of both spinor equations and the induced leg rotation",
        covers: "R(ψe^{qe21χ}, A − ∂χ) = R(ψ, A) e^{qe21χ}; e'^1 = cos qθ e^1 + sin qθ e^2",
        checks: gauge::CHECKS,
        run: gauge::run,
    },
    SuiteInfo {
        name: "lorentz",
        description: "spin-frame changes: residual covariance, orthonormality, naturality, connection law",
        covers: "R' = RU⁻¹; ½ω' = U½ωU⁻¹ + (∇U)U⁻¹; e'_a = U e_a U⁻¹",
        checks: lorentz::CHECKS,
        run: lorentz::run,
    },
    SuiteInfo {
        name: "bilinears",
        description: "bilinear covariants, their grades and the Fierz relations",
        covers: "S = ψψ̃ = σ + e₅ω, J = ψe₀ψ̃, K = ψe₃ψ̃, M = ψe₁e₂ψ̃; J² = σ²+ω², K² = −(σ²+ω²), J·K = 0",
        checks: bilinears::CHECKS,
        run: bilinears::run,
    },
];

pub fn find(name: &str) -> Option<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.name == name)
}

/// Runs one suite against a resolved scenario.
pub fn run_suite(info: &SuiteInfo, ctx: &Context) -> Vec<Check> {
    (info.run)(ctx)
}

/// Everything a suite needs.
pub struct Context<'a> {
    pub resolved: &'a Resolved,
    pub grid: Grid,
    pub steps: usize,
    pub seed: u64,
}

impl<'a> Context<'a> {
    pub fn new(resolved: &'a Resolved, grid_points: usize, steps: usize, seed: u64) -> Self {
        Context { resolved, grid: resolved.setup.chart.grid(grid_points), steps, seed }
    }

    pub fn setup(&self) -> &Setup {
        &self.resolved.setup
    }

    /// Independent random stream per suite.
    pub fn rng(&self, suite: &str) -> ChaCha8Rng {
        let salt = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ salt)
    }

    /// Scenario setup followed by random Riemann-Cartan and Lorentzian setups
    /// on the same chart.
    pub fn setups(&self, rng: &mut ChaCha8Rng) -> Vec<Setup> {
        let chart = &self.setup().chart;
        vec![self.setup().clone(), sample::riemann_cartan_setup(rng, chart), sample::lorentzian_setup(rng, chart)]
    }

    /// A non-flat setup: the scenario's own if it has a connection or a
    /// moving frame, else a random Riemann-Cartan one.
    pub fn curved_setup(&self, rng: &mut ChaCha8Rng) -> Setup {
        let s = self.setup();
        if s.is_flat() && s.frame.rotor.is_none() {
            sample::riemann_cartan_setup(rng, &s.chart)
        } else {
            s.clone()
        }
    }

    pub fn curve(&self) -> Curve {
        if let Some(c) = &self.resolved.scenario.curve {
            return c.clone();
        }
        // A wobbly cubic through the middle half of the box.
        let chart = &self.setup().chart;
        let coeffs = std::array::from_fn(|mu| {
            let (lo, hi) = (chart.lo[mu], chart.hi[mu]);
            let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            let s = [0.9, -0.7, 0.8, -0.6][mu];
            [mid - 0.4 * s * half, 0.8 * s * half, 0.3 * half, -0.25 * half]
        });
        Curve::Polynomial { coeffs }
    }

    pub fn tol(&self, suite: &str, name: &str, default: f64) -> f64 {
        let sc = &self.resolved.scenario;
        sc.tolerances.get(&format!("{suite}/{name}")).or_else(|| sc.tolerances.get(name)).copied().unwrap_or(default)
    }

    pub fn gauge_functions(&self) -> &[FieldExpr] {
        &self.resolved.scenario.gauge
    }
}

/// Collects the checks of one suite.
pub struct Recorder<'c, 'a> {
    ctx: &'c Context<'a>,
    suite: &'static str,
    pub checks: Vec<Check>,
}

impl<'c, 'a> Recorder<'c, 'a> {
    pub fn new(ctx: &'c Context<'a>, suite: &'static str) -> Self {
        Recorder { ctx, suite, checks: Vec::new() }
    }

    fn push(&mut self, name: &str, formula: &str, default_tol: f64, rule: Rule, measured: Result<f64, Error>) {
        let tol = self.ctx.tol(self.suite, name, default_tol);
        let check = match measured {
            Ok(m) => Check::new(self.suite, name, formula, m, tol, rule),
            Err(e) => Check::errored(self.suite, name, formula, tol, e.to_string()),
        };
        self.checks.push(check);
    }

    pub fn at_most(&mut self, name: &str, formula: &str, tol: f64, measured: Result<f64, Error>) {
        self.push(name, formula, tol, Rule::AtMost, measured);
    }

    pub fn at_least(&mut self, name: &str, formula: &str, bound: f64, measured: Result<f64, Error>) {
        self.push(name, formula, bound, Rule::AtLeast, measured);
    }

    pub fn expected(&mut self, name: &str, formula: &str, tol: f64, expected: f64, measured: Result<f64, Error>) {
        self.push(name, formula, tol, Rule::Expected { expected }, measured);
    }

    pub fn finish(self) -> Vec<Check> {
        self.checks
    }
}

/// Maximum that turns NaN into infinity.
pub fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::INFINITY
    } else {
        a.max(b)
    }
}

/// Deviation relative to the size of the quantities compared, floored at 1.
pub fn relative(dev: f64, scale: f64) -> f64 {
    dev / scale.max(1.0)
}
