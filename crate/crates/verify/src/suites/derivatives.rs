use rand_chacha::ChaCha8Rng;
use sta_core::clifford::Multivector;
use sta_core::dirac::make_plane_wave;
use sta_core::field::{CliffordField, FieldExpr, LeftSpinorField, Point, RightSpinorField};
use sta_core::sample;
use sta_core::spacetime::{pair_to_clifford, Setup, VectorField};
use sta_core::spin::idempotent_e;
use sta_core::Error;

use super::{worst, Context, Recorder};
use crate::report::Check;

pub const CHECKS: &[&str] = &[
    "leibniz_clifford",
    "leibniz_left_module",
    "leibniz_right_module",
    "leibniz_pairing",
    "leibniz_effective",
    "ideal_preservation",
    "effective_routes",
    "unit_section",
    "frame_coefficients",
    "dirac_operator_fd",
];

const PAIRS: usize = 50;
/// Fields per setup for the single-field identities.
const FIELDS: usize = 4;

fn direction(rng: &mut ChaCha8Rng) -> VectorField {
    VectorField::Coordinate(sample::vector_field(rng))
}

/// Runs `law` on `PAIRS` samples spread over the setups and returns the worst
/// deviation.
fn over_pairs<F>(ctx: &Context, setups: &[Setup], rng: &mut ChaCha8Rng, mut law: F) -> f64
where
    F: FnMut(&Setup, &mut ChaCha8Rng) -> Box<dyn Fn(&Point) -> f64 + Sync + Send>,
{
    (0..PAIRS).fold(0.0, |acc, k| {
        let f = law(&setups[k % setups.len()], rng);
        worst(acc, ctx.grid.sup(|x| f(x)))
    })
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng("derivatives");
    let mut rec = Recorder::new(ctx, "derivatives");
    let setups = ctx.setups(&mut rng);

    let dev = over_pairs(ctx, &setups, &mut rng, |s, r| {
        let (s, a, b, v) = (s.clone(), CliffordField::new(sample::field(r, false)), CliffordField::new(sample::field(r, false)), direction(r));
        let ab = &a * &b;
        Box::new(move |x| {
            let d = s.local(&v, x);
            let (ja, jb) = (a.jet(x), b.jet(x));
            let rhs = d.clifford(&ja).gp(&jb.value) + ja.value.gp(&d.clifford(&jb));
            (d.clifford(&ab.jet(x)) - rhs).sup_norm()
        })
    });
    rec.at_most("leibniz_clifford", "∇_V(AB) = (∇_V A)B + A∇_V B", 1e-9, Ok(dev));

    let dev = over_pairs(ctx, &setups, &mut rng, |s, r| {
        let (s, a, psi, v) = (s.clone(), CliffordField::new(sample::field(r, false)), LeftSpinorField::new(sample::field(r, false)), direction(r));
        let a_psi = &a * &psi;
        Box::new(move |x| {
            let d = s.local(&v, x);
            let (ja, jp) = (a.jet(x), psi.jet(x));
            (d.left(&a_psi.jet(x)) - ja.value.gp(&d.left(&jp)) - d.clifford(&ja).gp(&jp.value)).sup_norm()
        })
    });
    rec.at_most("leibniz_left_module", "∇ˢ_V(AΨ) = A∇ˢ_V Ψ + (∇_V A)Ψ", 1e-9, Ok(dev));

    let dev = over_pairs(ctx, &setups, &mut rng, |s, r| {
        let (s, a, phi, v) = (s.clone(), CliffordField::new(sample::field(r, false)), RightSpinorField::new(sample::field(r, false)), direction(r));
        let phi_a = &phi * &a;
        Box::new(move |x| {
            let d = s.local(&v, x);
            let (ja, jp) = (a.jet(x), phi.jet(x));
            (d.right(&phi_a.jet(x)) - jp.value.gp(&d.clifford(&ja)) - d.right(&jp).gp(&ja.value)).sup_norm()
        })
    });
    rec.at_most("leibniz_right_module", "∇ˢ_V(ΦA) = Φ∇_V A + (∇ˢ_V Φ)A", 1e-9, Ok(dev));

    let dev = over_pairs(ctx, &setups, &mut rng, |s, r| {
        let (s, psi, phi, v) = (s.clone(), LeftSpinorField::new(sample::field(r, false)), RightSpinorField::new(sample::field(r, false)), direction(r));
        let product = pair_to_clifford(&psi, &phi);
        Box::new(move |x| {
            let d = s.local(&v, x);
            let (jl, jr) = (psi.jet(x), phi.jet(x));
            (d.clifford(&product.jet(x)) - d.left(&jl).gp(&jr.value) - jl.value.gp(&d.right(&jr))).sup_norm()
        })
    });
    rec.at_most("leibniz_pairing", "∇_V(ΨΦ) = (∇ˢ_V Ψ)Φ + Ψ∇ˢ_V Φ", 1e-9, Ok(dev));

    let dev = over_pairs(ctx, &setups, &mut rng, |s, r| {
        let (s, u, psi) = (s.clone(), CliffordField::new(sample::field(r, false)), CliffordField::new(sample::field(r, true)));
        let u_psi = &u * &psi;
        Box::new(move |x| {
            let legs = s.frame.leg_directions(x);
            let (ju, jp, prod) = (u.jet(x), psi.jet(x), u_psi.jet(x));
            (0..4).fold(0.0, |acc, a| {
                let d = s.local_along(legs[a], x);
                let rhs = d.clifford(&ju).gp(&jp.value) + ju.value.gp(&d.effective(&jp));
                worst(acc, (d.effective(&prod) - rhs).sup_norm())
            })
        })
    });
    rec.at_most("leibniz_effective", "∇^(s)_a(Uψ) = (∇_a U)ψ + U∇^(s)_a ψ", 1e-9, Ok(dev));

    let e = idempotent_e();
    let mut ideal = 0.0;
    let mut routes = 0.0;
    for s in &setups {
        for _ in 0..FIELDS {
            let psi = LeftSpinorField::new(FieldExpr::product(sample::field(&mut rng, false), FieldExpr::constant(e)));
            let v = direction(&mut rng);
            ideal = worst(
                ideal,
                ctx.grid.sup(|x| {
                    let d = s.cov_deriv_left(&psi, &v, x);
                    (d.gp(&e) - d).sup_norm()
                }),
            );
            let rep = CliffordField::new(sample::field(&mut rng, true));
            let r = ctx.grid.try_sup(|x| {
                let legs = s.frame.leg_directions(x);
                let jet = rep.jet(x);
                Ok::<f64, Error>((0..4).fold(0.0, |acc, a| {
                    let d = s.local_along(legs[a], x);
                    let d = d.effective(&jet) - d.effective_via_clifford(&jet);
                    worst(acc, d.sup_norm())
                }))
            });
            routes = worst(routes, r.unwrap_or(f64::INFINITY));
        }
    }
    rec.at_most("ideal_preservation", "∇ˢ_V(Ψe) = (∇ˢ_V Ψ)e", 1e-10, Ok(ideal));
    rec.at_most("effective_routes", "∇_a ψ + ½ψω_a = ∂_a ψ + ½ω_a ψ", 1e-9, Ok(routes));

    let unit = setups.iter().fold(0.0, |acc, s| {
        worst(
            acc,
            ctx.grid.sup(|x| {
                (0..4).fold(0.0, |acc, a| {
                    let d = s.cov_deriv_right(&RightSpinorField::unit(), &VectorField::FrameLeg(a), x);
                    worst(acc, (d + s.spin_connection(x, a) * 0.5).sup_norm())
                })
            }),
        )
    });
    rec.at_most("unit_section", "∇ˢ_a 1ʳ = −½ 1ʳ ω_a", 1e-9, Ok(unit));

    let coeffs = setups.iter().fold(0.0, |acc, s| {
        worst(
            acc,
            ctx.grid.sup(|x| {
                let g = s.coefficients_at(x);
                let mut out = 0.0;
                for a in 0..4 {
                    let along = s.local(&VectorField::FrameLeg(a), x);
                    for b in 0..4 {
                        let leg = CliffordField::constant(Multivector::lower_basis_vector(b));
                        let d = along.clifford(&leg.jet(x));
                        let expected: Multivector = (0..4).map(|c| Multivector::basis_vector(c) * g[a][b][c]).sum();
                        out = worst(out, (d - expected).sup_norm());
                    }
                }
                out
            }),
        )
    });
    rec.at_most("frame_coefficients", "∇_{e_a} e_b = Γ_abc e^c", 1e-10, Ok(coeffs));

    rec.at_least("dirac_operator_fd", "central differences of Dψ converge at order h²", 3.5, fd_ratio(ctx, &mut rng));

    rec.finish()
}

/// Error ratio of a central-difference Dirac operator at steps `h` and `h/2`
/// on a boosted plane wave, worst case over a few chart points.
fn fd_ratio(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<f64, Error> {
    let chart = &ctx.setup().chart;
    let flat = Setup::minkowski(chart.clone());
    let psi = make_plane_wave(1.0 + ctx.resolved.params.m, &sample::rotor(rng, 0.5))?;
    let left = LeftSpinorField::new(psi.expr().clone());
    let fd = |x: &Point, h: f64| -> Multivector {
        (0..4)
            .map(|mu| {
                let (mut p, mut q) = (*x, *x);
                p[mu] += h;
                q[mu] -= h;
                Multivector::basis_vector(mu).gp(&((psi.eval(&p) - psi.eval(&q)) * (0.5 / h)))
            })
            .sum()
    };
    let h = 1e-2 * (0..4).map(|mu| chart.hi[mu] - chart.lo[mu]).fold(f64::INFINITY, f64::min);
    let mut ratio = f64::INFINITY;
    for point in chart.grid(2).points.iter().step_by(3) {
        // Pull the corner points inward so the stencil stays in the chart.
        let x: Point = std::array::from_fn(|mu| 0.75 * point[mu] + 0.25 * 0.5 * (chart.lo[mu] + chart.hi[mu]));
        let exact = flat.dirac_operator_left(&left, &x);
        let e1 = (fd(&x, h) - exact).sup_norm();
        let e2 = (fd(&x, h / 2.0) - exact).sup_norm();
        ratio = ratio.min(e1 / e2);
    }
    Ok(ratio)
}
