use rand_chacha::ChaCha8Rng;
use sta_core::clifford::{eta, Multivector};
use sta_core::dirac::{lorentz_covariance_check, DiracParams};
use sta_core::field::{CliffordField, FieldExpr, FieldKind, LeftSpinorField, RightSpinorField};
use sta_core::sample;
use sta_core::spacetime::{Setup, VectorField};
use sta_core::Error;

use super::{relative, worst, Context, Recorder};
use crate::report::Check;

pub const CHECKS: &[&str] = &[
    "covariance_constant_rotor",
    "covariance_local_rotor",
    "orthonormality",
    "naturality_clifford",
    "naturality_left",
    "naturality_right",
    "connection_routes",
];

/// Random field triples per setup for the naturality checks.
const FIELDS: usize = 3;

struct Case {
    setup: Setup,
    psi: FieldExpr,
    params: DiracParams,
}

fn cases(ctx: &Context, rng: &mut ChaCha8Rng) -> Vec<Case> {
    let r = ctx.resolved;
    let rc = sample::riemann_cartan_setup(rng, &r.setup.chart);
    vec![
        Case { setup: r.setup.clone(), psi: r.unknown.clone(), params: r.params.clone() },
        Case { setup: rc, psi: sample::field(rng, true), params: DiracParams { m: 0.8, q: 0.5, potential: sample::vector_field(rng) } },
    ]
}

/// `|R' − R·U⁻¹|` relative to the size of the residuals.
fn covariance(ctx: &Context, cases: &[Case], u: &FieldExpr) -> Result<f64, Error> {
    cases.iter().try_fold(0.0, |acc, c| {
        let r = lorentz_covariance_check(&c.setup, &c.psi, &c.params, u, &ctx.grid)?;
        Ok(worst(acc, relative(r.deviation, r.residual.max(r.transformed_residual))))
    })
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng("lorentz");
    let mut rec = Recorder::new(ctx, "lorentz");
    let cases = cases(ctx, &mut rng);
    let constant = FieldExpr::constant(sample::rotor(&mut rng, 0.5));
    let local = ctx.resolved.scenario.rotor.clone().unwrap_or_else(|| sample::rotor_field(&mut rng));

    rec.at_most("covariance_constant_rotor", "R' = R U⁻¹, constant U", 1e-8, covariance(ctx, &cases, &constant));
    rec.at_most("covariance_local_rotor", "R' = R U⁻¹, U(x) with ½ω' = U½ωU⁻¹ + (∇U)U⁻¹", 1e-8, covariance(ctx, &cases, &local));

    let primed: Result<Vec<Setup>, Error> = cases.iter().map(|c| c.setup.change_spin_frame(&local)).collect();
    let primed = match primed {
        Ok(p) => p,
        Err(e) => {
            for name in &CHECKS[2..] {
                rec.at_most(name, "spin-frame change", 0.0, Err(e.clone()));
            }
            return rec.finish();
        }
    };

    let ortho = primed.iter().fold(0.0, |acc, s| {
        worst(
            acc,
            ctx.grid.sup(|x| {
                let e: [Multivector; 4] = std::array::from_fn(|a| s.frame.reciprocal_leg(x, a));
                let mut out = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        let anti = e[a].gp(&e[b]) + e[b].gp(&e[a]) - Multivector::scalar(2.0 * eta(a, b));
                        out = worst(out, anti.sup_norm());
                    }
                }
                out
            }),
        )
    });
    rec.at_most("orthonormality", "e'^a e'^b + e'^b e'^a = 2η^ab", 1e-9, Ok(ortho));

    let mut nat = [0.0f64; 3];
    for (case, s2) in cases.iter().zip(&primed) {
        let s = &case.setup;
        for _ in 0..FIELDS {
            let v = VectorField::Coordinate(sample::vector_field(&mut rng));
            let a = CliffordField::new(sample::field(&mut rng, false));
            let psi = LeftSpinorField::new(sample::field(&mut rng, false));
            let phi = RightSpinorField::new(sample::field(&mut rng, false));
            let (a2, psi2, phi2) = (a.change_frame(&local), psi.change_frame(&local), phi.change_frame(&local));
            let t = |k: FieldKind, m: Multivector, u: &Multivector| k.transform_value(&m, u);
            let rel = |d: Multivector, scale: Multivector| relative(d.sup_norm(), scale.sup_norm());
            nat[0] = worst(
                nat[0],
                ctx.grid.sup(|x| {
                    let u = local.eval(x);
                    let old = s.cov_deriv_clifford(&a, &v, x);
                    rel(s2.cov_deriv_clifford(&a2, &v, x) - t(FieldKind::Clifford, old, &u), old)
                }),
            );
            nat[1] = worst(
                nat[1],
                ctx.grid.sup(|x| {
                    let u = local.eval(x);
                    let old = s.cov_deriv_left(&psi, &v, x);
                    rel(s2.cov_deriv_left(&psi2, &v, x) - t(FieldKind::LeftSpinor, old, &u), old)
                }),
            );
            nat[2] = worst(
                nat[2],
                ctx.grid.sup(|x| {
                    let u = local.eval(x);
                    let old = s.cov_deriv_right(&phi, &v, x);
                    rel(s2.cov_deriv_right(&phi2, &v, x) - t(FieldKind::RightSpinor, old, &u), old)
                }),
            );
        }
    }
    rec.at_most("naturality_clifford", "∇'_V(ŨAU) = Ũ(∇_V A)U", 1e-8, Ok(nat[0]));
    rec.at_most("naturality_left", "∇ˢ'_V(ŨΨ) = Ũ∇ˢ_V Ψ", 1e-8, Ok(nat[1]));
    rec.at_most("naturality_right", "∇ˢ'_V(ΦU) = (∇ˢ_V Φ)U", 1e-8, Ok(nat[2]));

    let routes = cases.iter().zip(&primed).fold(0.0, |acc, (case, s2)| {
        worst(
            acc,
            ctx.grid.sup(|x| {
                let g = case.setup.coefficients_of_rotated_frame(&local, x);
                (0..4).fold(0.0, |acc, a| {
                    let mut omega = Multivector::ZERO;
                    for b in 0..4 {
                        for c in 0..4 {
                            let w = Multivector::wedge_vectors(&Multivector::basis_vector(b), &Multivector::basis_vector(c));
                            omega += w * (-0.5 * g[a][b][c]);
                        }
                    }
                    worst(acc, (s2.spin_connection(x, a) - omega).sup_norm())
                })
            }),
        )
    });
    rec.at_most("connection_routes", "ω'_a from the gauge law = −½Γ'_abc e^b∧e^c recomputed from e'_a", 1e-10, Ok(routes));

    rec.finish()
}
