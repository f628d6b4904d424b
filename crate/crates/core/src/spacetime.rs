//! Charts, orthonormal frames, connections and the covariant derivatives
//! acting on the three kinds of section.
//!
//! A [`Setup`] carries everything relative to its own spin frame: field
//! components, the connection coefficients `Γ_abc` and the spin-connection
//! bivectors `ω_a = −½ Γ_abc E^b ∧ E^c` are all expressed in the basis that
//! spin frame induces. The frame's legs as vectors on the chart are recorded
//! through a rotor field relative to the fixed fiducial frame, whose legs are
//! the coordinate directions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::Multivector;
use crate::error::Error;
use crate::field::{CliffordField, FieldExpr, FieldKind, Jet, LeftSpinorField, Point, RightSpinorField};

/// Default number of integration steps for parallel transport.
pub const DEFAULT_TRANSPORT_STEPS: usize = 256;

/// Pointwise tolerance for the rotor condition `ũu = 1`.
pub const ROTOR_TOL: f64 = 1e-9;

/// Default tolerance for the antisymmetry of `Γ_abc` in `b, c`.
pub const ANTISYMMETRY_TOL: f64 = 1e-12;

/// A single coordinate box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chart {
    pub lo: Point,
    pub hi: Point,
    /// Step used by finite-difference cross-checks.
    #[serde(default = "Chart::default_step")]
    pub step: f64,
}

impl Chart {
    fn default_step() -> f64 {
        1e-3
    }

    pub fn new(lo: Point, hi: Point, step: f64) -> Result<Self, Error> {
        let chart = Chart { lo, hi, step };
        chart.validate()?;
        Ok(chart)
    }

    /// The box `[-1, 1]^4`.
    pub fn unit_box() -> Self {
        Chart { lo: [-1.0; 4], hi: [1.0; 4], step: Self::default_step() }
    }

    pub fn validate(&self) -> Result<(), Error> {
        for mu in 0..4 {
            if !(self.lo[mu] < self.hi[mu]) {
                return Err(Error::InvalidChart(format!(
                    "axis {mu}: lo = {} is not below hi = {}",
                    self.lo[mu], self.hi[mu]
                )));
            }
        }
        if !(self.step > 0.0) {
            return Err(Error::InvalidChart(format!("finite-difference step must be positive, got {}", self.step)));
        }
        Ok(())
    }

    pub fn contains(&self, x: &Point) -> bool {
        const SLACK: f64 = 1e-12;
        (0..4).all(|mu| x[mu] >= self.lo[mu] - SLACK && x[mu] <= self.hi[mu] + SLACK)
    }

    /// Regular grid with `n` points per axis (endpoints included).
    pub fn grid(&self, n: usize) -> Grid {
        let n = n.max(1);
        let axis = |mu: usize, i: usize| {
            if n == 1 {
                0.5 * (self.lo[mu] + self.hi[mu])
            } else {
                self.lo[mu] + (self.hi[mu] - self.lo[mu]) * i as f64 / (n - 1) as f64
            }
        };
        let mut points = Vec::with_capacity(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        points.push([axis(0, i), axis(1, j), axis(2, k), axis(3, l)]);
                    }
                }
            }
        }
        Grid { points }
    }
}

/// Sample points for pointwise identity checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub points: Vec<Point>,
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::INFINITY
    } else {
        a.max(b)
    }
}

impl Grid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Maximum of `f` over the grid, evaluated in parallel. A NaN anywhere
    /// yields infinity.
    pub fn sup<F>(&self, f: F) -> f64
    where
        F: Fn(&Point) -> f64 + Sync + Send,
    {
        self.points.par_iter().map(|x| f(x)).reduce(|| 0.0, nan_max)
    }

    /// Like [`Grid::sup`] for fallible evaluations; the first error in grid
    /// order wins.
    pub fn try_sup<F>(&self, f: F) -> Result<f64, Error>
    where
        F: Fn(&Point) -> Result<f64, Error> + Sync + Send,
    {
        let values: Vec<Result<f64, Error>> = self.points.par_iter().map(|x| f(x)).collect();
        let mut best = 0.0;
        for v in values {
            best = nan_max(best, v?);
        }
        Ok(best)
    }
}

/// The orthonormal frame `{e_a}` of a spin frame, stored as the rotor field
/// `r` relative to the fiducial frame: `e_a = r E_a r̃` in fiducial components.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct FrameField {
    /// `None` for the fiducial frame (`e_a ≡ E_a`).
    #[serde(default)]
    pub rotor: Option<FieldExpr>,
}

impl FrameField {
    pub fn fiducial() -> Self {
        FrameField { rotor: None }
    }

    pub fn rotor_at(&self, x: &Point) -> Multivector {
        self.rotor.as_ref().map_or(Multivector::ONE, |r| r.eval(x))
    }

    /// Leg `e_a` in fiducial components.
    pub fn leg(&self, x: &Point, a: usize) -> Multivector {
        let e = Multivector::lower_basis_vector(a);
        match &self.rotor {
            None => e,
            Some(r) => {
                let r = r.eval(x);
                r.gp(&e).gp(&r.reverse())
            }
        }
    }

    /// Reciprocal leg `e^a` in fiducial components.
    pub fn reciprocal_leg(&self, x: &Point, a: usize) -> Multivector {
        let e = Multivector::basis_vector(a);
        match &self.rotor {
            None => e,
            Some(r) => {
                let r = r.eval(x);
                r.gp(&e).gp(&r.reverse())
            }
        }
    }

    /// All four legs in fiducial components.
    pub fn legs(&self, x: &Point) -> [Multivector; 4] {
        let r = self.rotor_at(x);
        let rr = r.reverse();
        std::array::from_fn(|a| r.gp(&Multivector::lower_basis_vector(a)).gp(&rr))
    }

    /// Contravariant coordinate components of every leg, `e_a = e_a^μ ∂_μ`.
    pub fn leg_directions(&self, x: &Point) -> [[f64; 4]; 4] {
        match &self.rotor {
            None => std::array::from_fn(|a| std::array::from_fn(|mu| if a == mu { 1.0 } else { 0.0 })),
            Some(_) => self.legs(x).map(|leg| leg.contravariant()),
        }
    }

    /// Components `V^a` of a vector with coordinate components `v` in this frame.
    pub fn frame_components(&self, x: &Point, v: &[f64; 4]) -> [f64; 4] {
        match &self.rotor {
            None => *v,
            Some(r) => {
                let r = r.eval(x);
                let vec = Multivector::vector_from_contravariant(*v);
                r.reverse().gp(&vec).gp(&r).contravariant()
            }
        }
    }
}

/// Connection coefficients `Γ_abc` relative to the frame of the owning setup.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    /// 64 scalar fields, flattened as `a·16 + b·4 + c`.
    entries: Vec<FieldExpr>,
}

fn flat(a: usize, b: usize, c: usize) -> usize {
    a * 16 + b * 4 + c
}

impl CoefficientTable {
    pub fn zero() -> Self {
        CoefficientTable { entries: vec![FieldExpr::zero(); 64] }
    }

    /// Builds a table from `(a, b, c, Γ_abc)` entries. An entry whose mirror
    /// `(a, c, b)` is not listed gets the mirror filled in as `−Γ_abc`; if
    /// both are listed they are kept as given and must be checked with
    /// [`CoefficientTable::check_antisymmetry`].
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, usize, usize, FieldExpr)>) -> Result<Self, Error> {
        let mut table = Self::zero();
        let mut given = [false; 64];
        let mut pending = Vec::new();
        for (a, b, c, expr) in entries {
            if a > 3 || b > 3 || c > 3 {
                return Err(Error::Invalid(format!("connection index ({a}, {b}, {c}) out of range")));
            }
            expr.validate()?;
            given[flat(a, b, c)] = true;
            table.entries[flat(a, b, c)] = expr.clone();
            pending.push((a, b, c, expr));
        }
        for (a, b, c, expr) in pending {
            if !given[flat(a, c, b)] {
                table.entries[flat(a, c, b)] = -expr;
            }
        }
        Ok(table)
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &FieldExpr {
        &self.entries[flat(a, b, c)]
    }

    pub fn eval(&self, x: &Point) -> [[[f64; 4]; 4]; 4] {
        std::array::from_fn(|a| {
            std::array::from_fn(|b| std::array::from_fn(|c| self.entries[flat(a, b, c)].eval(x).scalar_part()))
        })
    }

    /// Verifies `Γ_abc = −Γ_acb` on every grid point.
    pub fn check_antisymmetry(&self, grid: &Grid, tol: f64) -> Result<(), Error> {
        for x in &grid.points {
            let g = self.eval(x);
            for a in 0..4 {
                for b in 0..4 {
                    for c in b..4 {
                        let deviation = (g[a][b][c] + g[a][c][b]).abs();
                        if !(deviation <= tol) {
                            return Err(Error::NotAntisymmetric { a, b, c, deviation });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The connection of a setup.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connection {
    /// `Γ ≡ 0`.
    Flat,
    Coefficients(CoefficientTable),
    /// The connection of `base` seen from the spin frame obtained by the
    /// rotor field `rotor` (expressed in the base frame's components).
    Gauged { base: Box<Setup>, rotor: FieldExpr },
}

/// `ω_a = −½ Γ_abc E^b ∧ E^c` for one frame index.
fn omega_from_coefficients(g: &[[f64; 4]; 4]) -> Multivector {
    let mut out = Multivector::ZERO;
    for b in 0..4 {
        for c in 0..4 {
            if b == c || g[b][c] == 0.0 {
                continue;
            }
            let wedge = Multivector::wedge_vectors(&Multivector::basis_vector(b), &Multivector::basis_vector(c));
            out += wedge * (-0.5 * g[b][c]);
        }
    }
    out
}

/// A vector field along which to differentiate.
#[derive(Clone, Debug, PartialEq)]
pub enum VectorField {
    /// Leg `e_a` of the setup's frame.
    FrameLeg(usize),
    /// Grade-1 field given in fiducial (coordinate) components.
    Coordinate(FieldExpr),
}

/// Direction `V` at a point with its connection bivector `ω_V`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalDerivative {
    /// Coordinate components of `V`.
    pub dir: [f64; 4],
    pub omega: Multivector,
}

impl LocalDerivative {
    /// `V(A) + ½[ω_V, A]`
    pub fn clifford(&self, jet: &Jet) -> Multivector {
        jet.directional(&self.dir) + Multivector::commutator_half(&self.omega, &jet.value)
    }

    /// `V(Ψ) + ½ω_V Ψ`
    pub fn left(&self, jet: &Jet) -> Multivector {
        jet.directional(&self.dir) + self.omega.gp(&jet.value) * 0.5
    }

    /// `V(Φ) − ½Φω_V`
    pub fn right(&self, jet: &Jet) -> Multivector {
        jet.directional(&self.dir) - jet.value.gp(&self.omega) * 0.5
    }

    /// `V(ψ) + ½ω_V ψ` for a representative.
    pub fn effective(&self, jet: &Jet) -> Multivector {
        self.left(jet)
    }

    /// `∇_V ψ + ½ψω_V`
    pub fn effective_via_clifford(&self, jet: &Jet) -> Multivector {
        self.clifford(jet) + jet.value.gp(&self.omega) * 0.5
    }
}

/// Chart, spin frame and connection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Setup {
    pub chart: Chart,
    #[serde(default)]
    pub frame: FrameField,
    pub connection: Connection,
}

/// Number of points per axis used for construction-time checks.
const CHECK_GRID: usize = 5;

impl Setup {
    /// Validates the chart and the antisymmetry of any coefficient table.
    pub fn new(chart: Chart, frame: FrameField, connection: Connection) -> Result<Self, Error> {
        chart.validate()?;
        if let Connection::Coefficients(table) = &connection {
            table.check_antisymmetry(&chart.grid(CHECK_GRID), ANTISYMMETRY_TOL)?;
        }
        if let Some(r) = &frame.rotor {
            r.validate()?;
            check_rotor(r, &chart.grid(CHECK_GRID))?;
        }
        Ok(Setup { chart, frame, connection })
    }

    /// Inertial Minkowski setup: fiducial frame, `Γ ≡ 0`.
    pub fn minkowski(chart: Chart) -> Self {
        Setup { chart, frame: FrameField::fiducial(), connection: Connection::Flat }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self.connection, Connection::Flat)
    }

    /// Coordinate components of `V` at `x`.
    pub fn direction(&self, v: &VectorField, x: &Point) -> [f64; 4] {
        match v {
            VectorField::FrameLeg(a) => self.frame.leg_directions(x)[*a],
            VectorField::Coordinate(expr) => expr.eval(x).contravariant(),
        }
    }

    /// Connection bivector `ω_V` (own-frame components) for a vector with
    /// coordinate components `v`.
    pub fn omega(&self, x: &Point, v: &[f64; 4]) -> Multivector {
        match &self.connection {
            Connection::Flat => Multivector::ZERO,
            Connection::Coefficients(table) => {
                let comps = self.frame.frame_components(x, v);
                let g = table.eval(x);
                let mut out = Multivector::ZERO;
                for a in 0..4 {
                    if comps[a] != 0.0 {
                        out += omega_from_coefficients(&g[a]) * comps[a];
                    }
                }
                out
            }
            Connection::Gauged { base, rotor } => {
                // ½ω' = ũ(½ω)u + ũ V(u)
                let jet = rotor.jet(x);
                let u = jet.value;
                let ur = u.reverse();
                let base_omega = base.omega(x, v);
                ur.gp(&base_omega).gp(&u) + ur.gp(&jet.directional(v)) * 2.0
            }
        }
    }

    /// `ω_a = ω_{e_a}`.
    pub fn spin_connection(&self, x: &Point, a: usize) -> Multivector {
        let dir = self.frame.leg_directions(x)[a];
        self.omega(x, &dir)
    }

    /// All four `ω_a` at `x`.
    pub fn spin_connections(&self, x: &Point) -> [Multivector; 4] {
        let dirs = self.frame.leg_directions(x);
        dirs.map(|d| self.omega(x, &d))
    }

    /// Coefficients `Γ_abc` recovered from `½[ω_a, E_b] = Γ_abc E^c`.
    pub fn coefficients_at(&self, x: &Point) -> [[[f64; 4]; 4]; 4] {
        let omegas = self.spin_connections(x);
        std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                let d = Multivector::commutator_half(&omegas[a], &Multivector::lower_basis_vector(b));
                std::array::from_fn(|c| d.gp(&Multivector::lower_basis_vector(c)).scalar_part())
            })
        })
    }

    /// Checks the antisymmetry of the coefficient table on a grid.
    pub fn check_connection(&self, grid: &Grid, tol: f64) -> Result<(), Error> {
        match &self.connection {
            Connection::Coefficients(table) => table.check_antisymmetry(grid, tol),
            Connection::Gauged { base, .. } => base.check_connection(grid, tol),
            Connection::Flat => Ok(()),
        }
    }

    /// Direction and connection bivector of `V` at `x`, shared by every
    /// covariant derivative along `V` there.
    pub fn local(&self, v: &VectorField, x: &Point) -> LocalDerivative {
        self.local_along(self.direction(v, x), x)
    }

    pub fn local_along(&self, dir: [f64; 4], x: &Point) -> LocalDerivative {
        LocalDerivative { dir, omega: self.omega(x, &dir) }
    }

    /// `∇_V A = V(A) + ½[ω_V, A]`.
    pub fn cov_deriv_clifford(&self, a: &CliffordField, v: &VectorField, x: &Point) -> Multivector {
        self.local(v, x).clifford(&a.jet(x))
    }

    pub fn cov_deriv_clifford_jet(&self, jet: &Jet, dir: &[f64; 4], x: &Point) -> Multivector {
        self.local_along(*dir, x).clifford(jet)
    }

    /// `∇ˢ_V Ψ = V(Ψ) + ½ ω_V Ψ`.
    pub fn cov_deriv_left(&self, psi: &LeftSpinorField, v: &VectorField, x: &Point) -> Multivector {
        self.local(v, x).left(&psi.jet(x))
    }

    pub fn cov_deriv_left_jet(&self, jet: &Jet, dir: &[f64; 4], x: &Point) -> Multivector {
        self.local_along(*dir, x).left(jet)
    }

    /// `∇ˢ_V Φ = V(Φ) − ½ Φ ω_V`.
    pub fn cov_deriv_right(&self, phi: &RightSpinorField, v: &VectorField, x: &Point) -> Multivector {
        self.local(v, x).right(&phi.jet(x))
    }

    pub fn cov_deriv_right_jet(&self, jet: &Jet, dir: &[f64; 4], x: &Point) -> Multivector {
        self.local_along(*dir, x).right(jet)
    }

    /// Effective derivative of a representative, `∂_{e_a} ψ + ½ ω_a ψ`.
    pub fn effective_deriv(&self, psi: &CliffordField, a: usize, x: &Point) -> Result<Multivector, Error> {
        let jet = psi.jet(x);
        ensure_even(&jet.value)?;
        let dir = self.frame.leg_directions(x)[a];
        Ok(self.effective_deriv_jet(&jet, &dir, x))
    }

    pub fn effective_deriv_jet(&self, jet: &Jet, dir: &[f64; 4], x: &Point) -> Multivector {
        self.local_along(*dir, x).effective(jet)
    }

    /// The same derivative assembled from the Clifford covariant derivative:
    /// `∇_{e_a} ψ + ½ ψ ω_a`.
    pub fn effective_deriv_via_clifford(&self, psi: &CliffordField, a: usize, x: &Point) -> Result<Multivector, Error> {
        let jet = psi.jet(x);
        ensure_even(&jet.value)?;
        let dir = self.frame.leg_directions(x)[a];
        Ok(self.effective_deriv_via_clifford_jet(&jet, &dir, x))
    }

    pub fn effective_deriv_via_clifford_jet(&self, jet: &Jet, dir: &[f64; 4], x: &Point) -> Multivector {
        self.local_along(*dir, x).effective_via_clifford(jet)
    }

    /// Spin Dirac operator `Dˢ Ψ = e^a ∇ˢ_{e_a} Ψ` (own-frame components, so
    /// `e^a` is the constant `E^a`).
    pub fn dirac_operator_left(&self, psi: &LeftSpinorField, x: &Point) -> Multivector {
        self.dirac_operator_left_jet(&psi.jet(x), x)
    }

    pub fn dirac_operator_left_jet(&self, jet: &Jet, x: &Point) -> Multivector {
        let dirs = self.frame.leg_directions(x);
        let mut out = Multivector::ZERO;
        for (a, dir) in dirs.iter().enumerate() {
            out += Multivector::basis_vector(a).gp(&self.cov_deriv_left_jet(jet, dir, x));
        }
        out
    }

    /// The same setup seen from the spin frame `Ξ' = Ξu`.
    pub fn change_spin_frame(&self, u: &FieldExpr) -> Result<Setup, Error> {
        u.validate()?;
        check_rotor(u, &self.chart.grid(CHECK_GRID))?;
        let rotor = match &self.frame.rotor {
            None => u.clone(),
            Some(r) => FieldExpr::product(r.clone(), u.clone()),
        };
        Ok(Setup {
            chart: self.chart.clone(),
            frame: FrameField { rotor: Some(rotor) },
            connection: Connection::Gauged { base: Box::new(self.clone()), rotor: u.clone() },
        })
    }

    /// `Γ'_abc` of the frame `e'_a = u E_a ũ` (own components of `self`),
    /// computed as `⟨(∇_{e'_a} e'_b) e'_c⟩` with this setup's derivative.
    /// Independent of the closed-form connection law used by
    /// [`Setup::change_spin_frame`].
    pub fn coefficients_of_rotated_frame(&self, u: &FieldExpr, x: &Point) -> [[[f64; 4]; 4]; 4] {
        let ur = u.reverse();
        let legs: [CliffordField; 4] = std::array::from_fn(|b| {
            CliffordField::new(FieldExpr::product(
                FieldExpr::product(u.clone(), FieldExpr::Constant(Multivector::lower_basis_vector(b))),
                ur.clone(),
            ))
        });
        let r = self.frame.rotor_at(x);
        let u_val = u.eval(x);
        let new_r = r.gp(&u_val);
        let dirs: [[f64; 4]; 4] = std::array::from_fn(|a| {
            new_r.gp(&Multivector::lower_basis_vector(a)).gp(&new_r.reverse()).contravariant()
        });
        let leg_values: [Multivector; 4] = std::array::from_fn(|c| legs[c].eval(x));
        std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                let d = self.cov_deriv_clifford_jet(&legs[b].jet(x), &dirs[a], x);
                std::array::from_fn(|c| d.gp(&leg_values[c]).scalar_part())
            })
        })
    }

    /// Parallel transport of `a0` along `curve` with fixed-step classical
    /// Runge-Kutta.
    ///
    /// Transport equations (own components):
    /// Clifford `dA/dt = −½[ω_{σ̇}, A]`, left `dΨ/dt = −½ ω_{σ̇} Ψ`,
    /// right `dΦ/dt = ½ Φ ω_{σ̇}`. Invariant sections do not move.
    ///
    /// Butcher tableau:
    /// ```text
    ///  0  |
    /// 1/2 | 1/2
    /// 1/2 |  0   1/2
    ///  1  |  0    0    1
    /// ----+-------------------
    ///     | 1/6  1/3  1/3  1/6
    /// ```
    pub fn parallel_transport(
        &self,
        a0: &Multivector,
        kind: FieldKind,
        curve: &Curve,
        steps: usize,
    ) -> Result<Multivector, Error> {
        let path = self.transport_path(a0, kind, curve, steps)?;
        Ok(*path.last().unwrap_or(a0))
    }

    /// Values at every step node, starting with `a0`.
    pub fn transport_path(
        &self,
        a0: &Multivector,
        kind: FieldKind,
        curve: &Curve,
        steps: usize,
    ) -> Result<Vec<Multivector>, Error> {
        if steps == 0 {
            return Err(Error::Invalid("parallel transport needs at least one step".into()));
        }
        let h = 1.0 / steps as f64;
        for k in 0..=2 * steps {
            let t = k as f64 * h / 2.0;
            if !self.chart.contains(&curve.position(t)) {
                return Err(Error::CurveOutOfChart { t });
            }
        }
        let rhs = |t: f64, a: &Multivector| -> Multivector {
            let x = curve.position(t);
            let omega = self.omega(&x, &curve.velocity(t));
            match kind {
                FieldKind::Clifford => -Multivector::commutator_half(&omega, a),
                FieldKind::LeftSpinor => omega.gp(a) * -0.5,
                FieldKind::RightSpinor => a.gp(&omega) * 0.5,
                FieldKind::Invariant => Multivector::ZERO,
            }
        };
        let mut path = Vec::with_capacity(steps + 1);
        let mut a = *a0;
        path.push(a);
        for n in 0..steps {
            let t = n as f64 * h;
            let k1 = rhs(t, &a);
            let k2 = rhs(t + h / 2.0, &(a + k1 * (h / 2.0)));
            let k3 = rhs(t + h / 2.0, &(a + k2 * (h / 2.0)));
            let k4 = rhs(t + h, &(a + k3 * h));
            a += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
            path.push(a);
        }
        Ok(path)
    }
}

fn ensure_even(m: &Multivector) -> Result<(), Error> {
    let odd = m.odd_part().sup_norm();
    if odd > crate::spin::IDEAL_TOL * m.sup_norm().max(1.0) {
        return Err(Error::NotEven { odd });
    }
    Ok(())
}

/// Checks `ũu = 1` on a grid.
pub fn check_rotor(u: &FieldExpr, grid: &Grid) -> Result<(), Error> {
    let deviation = grid.sup(|x| {
        let v = u.eval(x);
        (v.reverse().gp(&v) - Multivector::ONE).sup_norm()
    });
    if deviation > ROTOR_TOL {
        return Err(Error::NotRotor { deviation });
    }
    Ok(())
}

/// Representative of a left spinor field in the current spin frame:
/// `ψ_Ξ = Ψ · 1ʳ_Ξ`.
pub fn representative(psi: &LeftSpinorField) -> CliffordField {
    psi * &RightSpinorField::unit()
}

/// Pairing of a left and a right spinor field into a Clifford field.
pub fn pair_to_clifford(psi: &LeftSpinorField, phi: &RightSpinorField) -> CliffordField {
    psi * phi
}

/// A curve `t ↦ x(t)`, `t ∈ [0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Curve {
    Line { from: Point, to: Point },
    /// `x^μ(t) = Σ_k coeffs[μ][k] t^k`.
    Polynomial { coeffs: [[f64; 4]; 4] },
}

impl Curve {
    pub fn position(&self, t: f64) -> Point {
        match self {
            Curve::Line { from, to } => std::array::from_fn(|mu| from[mu] + t * (to[mu] - from[mu])),
            Curve::Polynomial { coeffs } => {
                std::array::from_fn(|mu| coeffs[mu].iter().rev().fold(0.0, |acc, c| acc * t + c))
            }
        }
    }

    pub fn velocity(&self, t: f64) -> [f64; 4] {
        match self {
            Curve::Line { from, to } => std::array::from_fn(|mu| to[mu] - from[mu]),
            Curve::Polynomial { coeffs } => std::array::from_fn(|mu| {
                let c = coeffs[mu];
                c[1] + 2.0 * c[2] * t + 3.0 * c[3] * t * t
            }),
        }
    }
}
