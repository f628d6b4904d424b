//! Residuals of the Dirac equation in its three forms, the maps between
//! them, gauge and Lorentz transformations, and bilinear covariants.
//!
//! Every residual is evaluated pointwise in the components of the setup's
//! own spin frame, where the frame legs `e^a`, the spin plane `e^21` and
//! `e^0` have the constant components `E^a`, `E^2E^1` and `E^0`.

use nalgebra::Vector4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{complexify, CMultivector, Multivector};
use crate::error::Error;
use crate::field::{CliffordField, FieldExpr, FieldKind, Jet, LeftSpinorField, Point};
use crate::spacetime::{check_rotor, Grid, Setup};
use crate::spin::{idempotent_f, spin_plane_phase, ColumnSpinor, ComplexMatrix, GammaRep, IDEAL_TOL};

/// Mass, charge and electromagnetic potential (natural units).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiracParams {
    pub m: f64,
    pub q: f64,
    /// Grade-1 potential in own-frame components; zero when absent.
    #[serde(default)]
    pub potential: FieldExpr,
}

impl DiracParams {
    pub fn free(m: f64) -> Self {
        DiracParams { m, q: 0.0, potential: FieldExpr::zero() }
    }

    pub fn validate(&self, grid: &Grid) -> Result<(), Error> {
        if !(self.m >= 0.0) || !self.m.is_finite() {
            return Err(Error::Invalid(format!("mass must be finite and non-negative, got {}", self.m)));
        }
        if !self.q.is_finite() {
            return Err(Error::Invalid(format!("charge must be finite, got {}", self.q)));
        }
        self.potential.validate()?;
        let stray = grid.sup(|x| {
            let a = self.potential.eval(x);
            (a - a.grade_proj(1)).sup_norm()
        });
        if stray > IDEAL_TOL {
            return Err(Error::Invalid(format!("potential is not a vector field (non-vector part {stray:e})")));
        }
        Ok(())
    }
}

/// Sup-norm of a residual over a grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub sup_norm: f64,
    pub points: usize,
}

fn ensure_even(m: &Multivector) -> Result<(), Error> {
    let odd = m.odd_part().sup_norm();
    if odd > IDEAL_TOL * m.sup_norm().max(1.0) {
        return Err(Error::NotEven { odd });
    }
    Ok(())
}

fn collect(grid: &Grid, f: impl Fn(&Point) -> Result<f64, Error> + Sync + Send) -> Result<Residual, Error> {
    Ok(Residual { sup_norm: grid.try_sup(f)?, points: grid.len() })
}

/// `Σ_a e^a ∇^{(s)}_{e_a}ψ e^21 − qAψ − mψe^0`, with the effective
/// derivative assembled as `∇_{e_a}ψ + ½ψω_a`.
pub fn residual_dhe_at(setup: &Setup, psi: &CliffordField, params: &DiracParams, x: &Point) -> Result<Multivector, Error> {
    let jet = psi.jet(x);
    ensure_even(&jet.value)?;
    Ok(dhe_from_jet(setup, &jet, params, x))
}

fn dhe_from_jet(setup: &Setup, jet: &Jet, params: &DiracParams, x: &Point) -> Multivector {
    let dirs = setup.frame.leg_directions(x);
    let mut d = Multivector::ZERO;
    for (a, dir) in dirs.iter().enumerate() {
        d += Multivector::basis_vector(a).gp(&setup.effective_deriv_via_clifford_jet(jet, dir, x));
    }
    equation_tail(d, &jet.value, params, x)
}

/// `D ψ e^21 − mψe^0 − qAψ` given the Dirac-operator term `D ψ`.
fn equation_tail(d: Multivector, psi: &Multivector, params: &DiracParams, x: &Point) -> Multivector {
    let mut r = d.gp(&Multivector::spin_plane()) - psi.gp(&Multivector::basis_vector(0)) * params.m;
    if params.q != 0.0 && !params.potential.is_zero_constant() {
        r -= params.potential.eval(x).gp(psi) * params.q;
    }
    r
}

pub fn residual_dhe(setup: &Setup, psi: &CliffordField, params: &DiracParams, grid: &Grid) -> Result<Residual, Error> {
    collect(grid, |x| residual_dhe_at(setup, psi, params, x).map(|r| r.sup_norm()))
}

/// `Dˢ Ψ e^21 − mΨe^0 − qAΨ` for a left spinor field.
pub fn residual_decl_at(setup: &Setup, psi: &LeftSpinorField, params: &DiracParams, x: &Point) -> Result<Multivector, Error> {
    let jet = psi.jet(x);
    ensure_even(&jet.value)?;
    let d = setup.dirac_operator_left_jet(&jet, x);
    Ok(equation_tail(d, &jet.value, params, x))
}

pub fn residual_decl(setup: &Setup, psi: &LeftSpinorField, params: &DiracParams, grid: &Grid) -> Result<Residual, Error> {
    collect(grid, |x| residual_decl_at(setup, psi, params, x).map(|r| r.sup_norm()))
}

/// A complexified field `re + i·im`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexField {
    pub re: FieldExpr,
    #[serde(default)]
    pub im: FieldExpr,
}

/// Value and coordinate partials of a complex field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexJet {
    pub value: CMultivector,
    pub partials: [CMultivector; 4],
}

impl ComplexJet {
    pub fn directional(&self, v: &[f64; 4]) -> CMultivector {
        let mut out = CMultivector::ZERO;
        for (p, &vm) in self.partials.iter().zip(v) {
            if vm != 0.0 {
                out = out + *p * vm;
            }
        }
        out
    }
}

impl ComplexField {
    /// `ψf` for an even real field `ψ`, with `f = ½(1+E^0)·½(1+iE^2E^1)`.
    pub fn from_dhsf(psi: &FieldExpr) -> Self {
        let f = idempotent_f();
        ComplexField {
            re: FieldExpr::product(psi.clone(), FieldExpr::constant(f.real_part())),
            im: FieldExpr::product(psi.clone(), FieldExpr::constant(f.imag_part())),
        }
    }

    pub fn eval(&self, x: &Point) -> CMultivector {
        CMultivector::from_parts(&self.re.eval(x), &self.im.eval(x))
    }

    pub fn jet(&self, x: &Point) -> ComplexJet {
        let re = self.re.jet(x);
        let im = self.im.jet(x);
        ComplexJet {
            value: CMultivector::from_parts(&re.value, &im.value),
            partials: std::array::from_fn(|mu| CMultivector::from_parts(&re.partials[mu], &im.partials[mu])),
        }
    }
}

fn check_in_ideal(psi: &CMultivector) -> Result<(), Error> {
    let deviation = (psi.gp(&idempotent_f()) - *psi).sup_norm();
    if deviation > IDEAL_TOL * psi.sup_norm().max(1.0) {
        return Err(Error::NotInIdeal { deviation });
    }
    Ok(())
}

/// `c·DˢΨ − mΨ − qAΨ` on the complex ideal, where `c` is the phase with
/// `E^2E^1 f = c f`. Multiplying the left spin-Clifford residual by `f`
/// lands exactly here.
pub fn residual_complex_ideal_at(
    setup: &Setup,
    psi: &ComplexField,
    params: &DiracParams,
    x: &Point,
) -> Result<CMultivector, Error> {
    let jet = psi.jet(x);
    check_in_ideal(&jet.value)?;
    Ok(complex_ideal_from_jet(setup, &jet, params, x))
}

fn complex_ideal_from_jet(setup: &Setup, jet: &ComplexJet, params: &DiracParams, x: &Point) -> CMultivector {
    let c = spin_plane_phase();
    let dirs = setup.frame.leg_directions(x);
    let mut d = CMultivector::ZERO;
    for (a, dir) in dirs.iter().enumerate() {
        let omega = complexify(&setup.omega(x, dir));
        let nabla = jet.directional(dir) + omega.gp(&jet.value) * 0.5;
        d = d + complexify(&Multivector::basis_vector(a)).gp(&nabla);
    }
    let mut r = d * c - jet.value * params.m;
    if params.q != 0.0 && !params.potential.is_zero_constant() {
        r = r - complexify(&params.potential.eval(x)).gp(&jet.value) * params.q;
    }
    r
}

pub fn residual_complex_ideal(
    setup: &Setup,
    psi: &ComplexField,
    params: &DiracParams,
    grid: &Grid,
) -> Result<Residual, Error> {
    collect(grid, |x| residual_complex_ideal_at(setup, psi, params, x).map(|r| r.sup_norm()))
}

/// A column-spinor field `x ↦ ℂ⁴`.
#[derive(Clone, Debug, PartialEq)]
pub enum ColumnField {
    /// Each entry `re + i·im` given by scalar fields.
    Entries([(FieldExpr, FieldExpr); 4]),
    /// The image of an ideal field under the column bijection.
    FromIdeal { field: ComplexField, rep: GammaRep },
}

/// Value and coordinate partials of a column field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColumnJet {
    pub value: ColumnSpinor,
    pub partials: [ColumnSpinor; 4],
}

impl ColumnField {
    pub fn jet(&self, x: &Point) -> ColumnJet {
        match self {
            ColumnField::Entries(entries) => {
                let jets: Vec<(Jet, Jet)> = entries.iter().map(|(re, im)| (re.jet(x), im.jet(x))).collect();
                let entry = |j: &(Jet, Jet), pick: &dyn Fn(&Jet) -> f64| Complex64::new(pick(&j.0), pick(&j.1));
                ColumnJet {
                    value: Vector4::from_fn(|k, _| entry(&jets[k], &|j| j.value.scalar_part())),
                    partials: std::array::from_fn(|mu| {
                        Vector4::from_fn(|k, _| entry(&jets[k], &|j| j.partials[mu].scalar_part()))
                    }),
                }
            }
            ColumnField::FromIdeal { field, rep } => {
                let jet = field.jet(x);
                ColumnJet {
                    value: rep.column_unchecked(&jet.value),
                    partials: jet.partials.map(|p| rep.column_unchecked(&p)),
                }
            }
        }
    }

    pub fn eval(&self, x: &Point) -> ColumnSpinor {
        self.jet(x).value
    }
}

fn column_norm(c: &ColumnSpinor) -> f64 {
    c.iter().fold(0.0, |acc: f64, z| if z.norm().is_nan() { f64::INFINITY } else { acc.max(z.norm()) })
}

/// `c γ^a(∇ˢ_{e_a} + c q A_a)|Ψ⟩ − m|Ψ⟩`, with the spinor connection acting
/// on columns through `ρ(½ω_a)`.
pub fn residual_covariant_at(
    setup: &Setup,
    col: &ColumnField,
    params: &DiracParams,
    rep: &GammaRep,
    x: &Point,
) -> ColumnSpinor {
    let c = spin_plane_phase();
    let jet = col.jet(x);
    let dirs = setup.frame.leg_directions(x);
    let potential = if params.q != 0.0 && !params.potential.is_zero_constant() {
        Some(params.potential.eval(x))
    } else {
        None
    };
    let mut d = ColumnSpinor::zeros();
    for (a, dir) in dirs.iter().enumerate() {
        let mut nabla: ColumnSpinor = jet.partials.iter().zip(dir).map(|(p, &v)| p * Complex64::from(v)).sum();
        let omega = setup.omega(x, dir);
        if omega != Multivector::ZERO {
            let w: ComplexMatrix = rep.rho_real(&omega) * Complex64::from(0.5);
            nabla += w * jet.value;
        }
        if let Some(pot) = &potential {
            let a_cov = pot.gp(&Multivector::lower_basis_vector(a)).scalar_part();
            nabla += jet.value * (c * params.q * a_cov);
        }
        d += rep.gamma(a) * nabla;
    }
    d * c - jet.value * Complex64::from(params.m)
}

pub fn residual_covariant(
    setup: &Setup,
    col: &ColumnField,
    params: &DiracParams,
    rep: &GammaRep,
    grid: &Grid,
) -> Residual {
    Residual { sup_norm: grid.sup(|x| column_norm(&residual_covariant_at(setup, col, params, rep, x))), points: grid.len() }
}

/// Measured deviations of the translations among the three forms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriadDeviation {
    /// `|R_dhe − R_decl|` with `ψ = Ψ·1ʳ`.
    pub dhe_vs_decl: f64,
    /// `|R_decl·f − φ·R_ideal(ψf)|`.
    pub decl_vs_ideal: f64,
    /// `|col(R_ideal(Ψc)) − φ·R_cov(col(Ψc))|`.
    pub ideal_vs_column: f64,
}

/// Phase `φ` relating the residual maps; with the imaginary unit of the
/// complex and column forms taken to be `c` it is exactly 1.
pub const TRIAD_PHASE: Complex64 = Complex64::new(1.0, 0.0);

/// Evaluates all three translation identities for an even field.
pub fn triad_deviation(
    setup: &Setup,
    psi: &FieldExpr,
    params: &DiracParams,
    rep: &GammaRep,
    grid: &Grid,
) -> Result<TriadDeviation, Error> {
    let clifford = CliffordField::new(psi.clone());
    let left = LeftSpinorField::new(psi.clone());
    let ideal = ComplexField::from_dhsf(psi);
    let column = ColumnField::FromIdeal { field: ideal.clone(), rep: rep.clone() };
    let f = idempotent_f();
    let per_point: Vec<Result<[f64; 3], Error>> = {
        use rayon::prelude::*;
        grid.points
            .par_iter()
            .map(|x| {
                let r_dhe = residual_dhe_at(setup, &clifford, params, x)?;
                let r_decl = residual_decl_at(setup, &left, params, x)?;
                let r_ideal = residual_complex_ideal_at(setup, &ideal, params, x)?;
                let r_col = residual_covariant_at(setup, &column, params, rep, x);
                let a = (r_dhe - r_decl).sup_norm();
                let b = (complexify(&r_decl).gp(&f) - r_ideal * TRIAD_PHASE).sup_norm();
                let c = column_norm(&(rep.column_unchecked(&r_ideal) - r_col * TRIAD_PHASE));
                Ok([a, b, c])
            })
            .collect()
    };
    let mut out = [0.0f64; 3];
    for r in per_point {
        let r = r?;
        for k in 0..3 {
            out[k] = if r[k].is_nan() { f64::INFINITY } else { out[k].max(r[k]) };
        }
    }
    Ok(TriadDeviation { dhe_vs_decl: out[0], decl_vs_ideal: out[1], ideal_vs_column: out[2] })
}

/// Gradient `∂χ = e^a e_a(χ)` in own-frame components.
pub fn gauge_gradient(setup: &Setup, chi: &FieldExpr) -> FieldExpr {
    let grad = chi.gradient();
    match &setup.frame.rotor {
        None => grad,
        Some(r) => FieldExpr::product(FieldExpr::product(r.reverse(), grad), r.clone()),
    }
}

/// Gauge rotor `exp(q e^21 χ)`.
pub fn gauge_rotor(q: f64, chi: &FieldExpr) -> FieldExpr {
    FieldExpr::exp(Multivector::spin_plane() * q, chi.clone())
}

fn gauge_params(setup: &Setup, params: &DiracParams, chi: &FieldExpr) -> DiracParams {
    // With ψ ↦ ψ e^{qe^21χ} the derivative term produces −q ∂χ ψ', which is
    // absorbed by A ↦ A − ∂χ.
    DiracParams { m: params.m, q: params.q, potential: params.potential.clone() - gauge_gradient(setup, chi) }
}

/// `Ψ ↦ Ψ e^{qe^21χ}`, `A ↦ A − ∂χ`; the connection is untouched.
pub fn gauge_transform_decl(
    setup: &Setup,
    psi: &LeftSpinorField,
    params: &DiracParams,
    chi: &FieldExpr,
) -> (LeftSpinorField, DiracParams) {
    let psi = LeftSpinorField::new(FieldExpr::product(psi.expr().clone(), gauge_rotor(params.q, chi)));
    (psi, gauge_params(setup, params, chi))
}

/// `ψ ↦ ψ e^{qe^21χ}`, `A ↦ A − ∂χ` for a representative.
pub fn gauge_transform_dhe(
    setup: &Setup,
    psi: &CliffordField,
    params: &DiracParams,
    chi: &FieldExpr,
) -> (CliffordField, DiracParams) {
    let psi = CliffordField::new(FieldExpr::product(psi.expr().clone(), gauge_rotor(params.q, chi)));
    (psi, gauge_params(setup, params, chi))
}

/// Sup over the grid of `|R(ψ', A') − R(ψ, A)·e^{qe^21χ}|` for both the
/// representative and the left-spinor equation.
pub fn gauge_covariance_deviation(
    setup: &Setup,
    psi: &FieldExpr,
    params: &DiracParams,
    chi: &FieldExpr,
    grid: &Grid,
) -> Result<(f64, f64), Error> {
    let rep = CliffordField::new(psi.clone());
    let left = LeftSpinorField::new(psi.clone());
    let (rep_t, params_t) = gauge_transform_dhe(setup, &rep, params, chi);
    let (left_t, _) = gauge_transform_decl(setup, &left, params, chi);
    let g = gauge_rotor(params.q, chi);
    let dhe = grid.try_sup(|x| {
        let lhs = residual_dhe_at(setup, &rep_t, &params_t, x)?;
        let rhs = residual_dhe_at(setup, &rep, params, x)?.gp(&g.eval(x));
        Ok((lhs - rhs).sup_norm())
    })?;
    let decl = grid.try_sup(|x| {
        let lhs = residual_decl_at(setup, &left_t, &params_t, x)?;
        let rhs = residual_decl_at(setup, &left, params, x)?.gp(&g.eval(x));
        Ok((lhs - rhs).sup_norm())
    })?;
    Ok((dhe, decl))
}

/// Outcome of [`lorentz_covariance_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorentzReport {
    /// Sup of `|R' − R·U⁻¹|` with both sides in the original frame's components.
    pub deviation: f64,
    /// Sup of `|R|` and `|R'|`.
    pub residual: f64,
    pub transformed_residual: f64,
}

/// Representative and potential in the frame `Ξ' = Ξu`.
pub fn lorentz_transform(psi: &FieldExpr, params: &DiracParams, u: &FieldExpr) -> (FieldExpr, DiracParams) {
    // As a Clifford field ψ' = ψU⁻¹; its components in the new frame are ũψ.
    let psi_t = FieldKind::LeftSpinor.transform(psi, u);
    let potential = if params.potential.is_zero_constant() {
        FieldExpr::zero()
    } else {
        FieldKind::Clifford.transform(&params.potential, u)
    };
    (psi_t, DiracParams { m: params.m, q: params.q, potential })
}

/// Computes the representative residual in both spin frames and compares
/// `R'` with `R·U⁻¹`.
pub fn lorentz_covariance_check(
    setup: &Setup,
    psi: &FieldExpr,
    params: &DiracParams,
    u: &FieldExpr,
    grid: &Grid,
) -> Result<LorentzReport, Error> {
    let primed = setup.change_spin_frame(u)?;
    let (psi_t, params_t) = lorentz_transform(psi, params, u);
    let rep = CliffordField::new(psi.clone());
    let rep_t = CliffordField::new(psi_t);
    let rows: Vec<Result<[f64; 3], Error>> = {
        use rayon::prelude::*;
        grid.points
            .par_iter()
            .map(|x| {
                let r = residual_dhe_at(setup, &rep, params, x)?;
                let r_t = residual_dhe_at(&primed, &rep_t, &params_t, x)?;
                let uv = u.eval(x);
                let ur = uv.reverse();
                // Clifford-field comparison in the old frame: u R'_own ũ against R ũ.
                let lhs = uv.gp(&r_t).gp(&ur);
                let rhs = r.gp(&ur);
                Ok([(lhs - rhs).sup_norm(), r.sup_norm(), r_t.sup_norm()])
            })
            .collect()
    };
    let mut out = [0.0f64; 3];
    for row in rows {
        let row = row?;
        for k in 0..3 {
            out[k] = if row[k].is_nan() { f64::INFINITY } else { out[k].max(row[k]) };
        }
    }
    Ok(LorentzReport { deviation: out[0], residual: out[1], transformed_residual: out[2] })
}

/// `S = ψψ̃ = σ + e₅ω`, `J = ψe₀ψ̃`, `K = ψe₃ψ̃`, `M = ψe₁e₂ψ̃`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bilinears {
    pub s: Multivector,
    pub sigma: f64,
    pub omega: f64,
    pub j: Multivector,
    pub k: Multivector,
    pub m: Multivector,
}

/// `e₅ = E_0E_1E_2E_3`.
pub fn volume_element() -> Multivector {
    let l = Multivector::lower_basis_vector;
    l(0).gp(&l(1)).gp(&l(2)).gp(&l(3))
}

/// Bilinear covariants of an even value.
pub fn bilinear_covariants(psi: &Multivector) -> Result<Bilinears, Error> {
    ensure_even(psi)?;
    let l = Multivector::lower_basis_vector;
    let rev = psi.reverse();
    let sandwich = |m: Multivector| psi.gp(&m).gp(&rev);
    let s = psi.gp(&rev);
    // e₅² = −1, so e₅⁻¹ = −e₅.
    let e5_inv = -volume_element();
    Ok(Bilinears {
        s,
        sigma: s.scalar_part(),
        omega: s.gp(&e5_inv).scalar_part(),
        j: sandwich(l(0)),
        k: sandwich(l(3)),
        m: sandwich(l(1).gp(&l(2))),
    })
}

/// Bilinears of a field at a point.
pub fn bilinear_covariants_at(psi: &CliffordField, x: &Point) -> Result<Bilinears, Error> {
    bilinear_covariants(&psi.eval(x))
}

/// Scalar product `⟨ab⟩₀` of two vectors.
pub fn dot(a: &Multivector, b: &Multivector) -> f64 {
    0.5 * (a.gp(b) + b.gp(a)).scalar_part()
}

/// `ψ(x) = U exp(−e^21 m (n·x))` with `n = U E^0 Ũ`: the rest-frame solution
/// seen from the frame boosted by `U`.
pub fn make_plane_wave(m: f64, boost: &Multivector) -> Result<CliffordField, Error> {
    let deviation = (boost.reverse().gp(boost) - Multivector::ONE).sup_norm().max(boost.odd_part().sup_norm());
    if !(deviation <= crate::spacetime::ROTOR_TOL) {
        return Err(Error::NotRotor { deviation });
    }
    let n = boost.gp(&Multivector::basis_vector(0)).gp(&boost.reverse());
    let wavevector: [f64; 4] = std::array::from_fn(|a| n.get(crate::clifford::BladeIndex::generator(a)));
    Ok(CliffordField::new(FieldExpr::rotor_wave(Multivector::spin_plane() * -m, wavevector, *boost)))
}

/// Checks that a rotor field is a rotor on a grid.
pub fn validate_rotor_field(u: &FieldExpr, grid: &Grid) -> Result<(), Error> {
    check_rotor(u, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::exp_bivector;
    use crate::spacetime::Chart;

    fn e(a: usize) -> Multivector {
        Multivector::basis_vector(a)
    }

    fn minkowski() -> Setup {
        Setup::minkowski(Chart::unit_box())
    }

    #[test]
    fn rest_frame_solution_has_zero_residual() {
        let m = 1.3;
        let psi = make_plane_wave(m, &Multivector::ONE).unwrap();
        let r = residual_dhe(&minkowski(), &psi, &DiracParams::free(m), &Chart::unit_box().grid(4)).unwrap();
        assert!(r.sup_norm < 1e-12, "{}", r.sup_norm);
    }

    #[test]
    fn constant_spinor_gives_minus_m_e0() {
        let m = 0.8;
        let r = residual_dhe_at(&minkowski(), &CliffordField::unit(), &DiracParams::free(m), &[0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!((r + e(0) * m).sup_norm() < 1e-15);
    }

    #[test]
    fn boosted_wave_solves_equation() {
        let boost = exp_bivector(&(e(1).gp(&e(0)) * 0.35 + e(2).gp(&e(3)) * 0.2)).unwrap();
        let psi = make_plane_wave(1.0, &boost).unwrap();
        let r = residual_dhe(&minkowski(), &psi, &DiracParams::free(1.0), &Chart::unit_box().grid(4)).unwrap();
        assert!(r.sup_norm < 1e-12, "{}", r.sup_norm);
    }

    #[test]
    fn odd_input_is_rejected() {
        let odd = CliffordField::constant(e(1));
        assert!(matches!(residual_dhe_at(&minkowski(), &odd, &DiracParams::free(1.0), &[0.0; 4]), Err(Error::NotEven { .. })));
    }

    #[test]
    fn non_ideal_input_is_rejected() {
        let field = ComplexField { re: FieldExpr::scalar(1.0), im: FieldExpr::zero() };
        let err = residual_complex_ideal_at(&minkowski(), &field, &DiracParams::free(1.0), &[0.0; 4]).unwrap_err();
        assert!(matches!(err, Error::NotInIdeal { .. }));
    }

    #[test]
    fn bilinears_of_unit_spinor() {
        let b = bilinear_covariants(&Multivector::ONE).unwrap();
        let l = Multivector::lower_basis_vector;
        assert_eq!(b.s, Multivector::ONE);
        assert_eq!((b.sigma, b.omega), (1.0, 0.0));
        assert_eq!(b.j, l(0));
        assert_eq!(b.k, l(3));
        assert_eq!(b.m, l(1).gp(&l(2)));
    }

    #[test]
    fn volume_element_squares_to_minus_one() {
        assert_eq!(volume_element().gp(&volume_element()), -Multivector::ONE);
    }

    #[test]
    fn plane_wave_rejects_non_rotor() {
        assert!(matches!(make_plane_wave(1.0, &(Multivector::ONE * 2.0)), Err(Error::NotRotor { .. })));
    }

    #[test]
    fn potential_must_be_a_vector() {
        let params = DiracParams { m: 1.0, q: 1.0, potential: FieldExpr::constant(Multivector::spin_plane()) };
        assert!(params.validate(&Chart::unit_box().grid(2)).is_err());
        assert!(DiracParams::free(-1.0).validate(&Chart::unit_box().grid(2)).is_err());
    }
}
