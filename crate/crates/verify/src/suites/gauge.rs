use sta_core::clifford::exp_bivector;
use sta_core::dirac::{gauge_covariance_deviation, DiracParams};
use sta_core::field::{FieldExpr, ScalarFn};
use sta_core::sample;
use sta_core::spacetime::Setup;
use sta_core::Error;

use super::{worst, Context, Recorder};
use crate::report::Check;

pub const CHECKS: &[&str] = &[
    "covariance_dhe_constant",
    "covariance_decl_constant",
    "covariance_dhe_linear",
    "covariance_decl_linear",
    "covariance_dhe_sine",
    "covariance_decl_sine",
    "covariance_scenario",
    "leg_rotation",
];

fn gauge_functions() -> [(&'static str, FieldExpr); 3] {
    [
        ("constant", FieldExpr::scalar(0.8)),
        ("linear", FieldExpr::Scalar(ScalarFn::Linear { offset: 0.1, slope: [0.5, -0.3, 0.2, 0.7] })),
        ("sine", FieldExpr::Scalar(ScalarFn::Sine { amplitude: 0.9, wavevector: [1.1, 0.4, -0.6, 0.3], phase: 0.2 })),
    ]
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng("gauge");
    let mut rec = Recorder::new(ctx, "gauge");
    let resolved = ctx.resolved;
    // A zero charge would make the rotor trivial, so use q = 1 then.
    let q = if resolved.params.q == 0.0 { 1.0 } else { resolved.params.q };
    let own = DiracParams { q, ..resolved.params.clone() };
    let random_setup = sample::lorentzian_setup(&mut rng, &ctx.setup().chart);
    let random = DiracParams { m: 1.1, q: 0.6, potential: sample::vector_field(&mut rng) };
    let cases: Vec<(&Setup, FieldExpr, &DiracParams)> =
        vec![(ctx.setup(), resolved.unknown.clone(), &own), (&random_setup, sample::field(&mut rng, true), &random)];

    let measure = |chi: &FieldExpr| -> Result<(f64, f64), Error> {
        cases.iter().try_fold((0.0, 0.0), |(d, l), (s, psi, p)| {
            let (dhe, decl) = gauge_covariance_deviation(s, psi, p, chi, &ctx.grid)?;
            Ok((worst(d, dhe), worst(l, decl)))
        })
    };

    let builtin = gauge_functions();
    for (label, chi) in &builtin {
        let m = measure(chi);
        rec.at_most(
            &format!("covariance_dhe_{label}"),
            "R_dhe(ψe^{qe21χ}, A − ∂χ) = R_dhe(ψ, A)e^{qe21χ}",
            1e-9,
            m.clone().map(|v| v.0),
        );
        rec.at_most(
            &format!("covariance_decl_{label}"),
            "R_decl(Ψe^{qe21χ}, A − ∂χ) = R_decl(Ψ, A)e^{qe21χ}",
            1e-9,
            m.map(|v| v.1),
        );
    }

    let scenario = ctx.gauge_functions().iter().try_fold(0.0, |acc, chi| {
        let (d, l) = measure(chi)?;
        Ok(worst(acc, worst(d, l)))
    });
    rec.at_most("covariance_scenario", "both identities for the scenario's gauge functions", 1e-9, scenario);

    // Rotating the spin plane by θ = 2χ turns e^1 and e^2 into each other.
    let legs = builtin.iter().map(|(_, chi)| chi).chain(ctx.gauge_functions()).fold(0.0, |acc, chi| {
        let frame = &ctx.setup().frame;
        worst(
            acc,
            ctx.grid.sup(|x| {
                let e: [_; 4] = std::array::from_fn(|a| frame.reciprocal_leg(x, a));
                let plane = e[2].gp(&e[1]);
                let theta = 2.0 * chi.eval(x).scalar_part();
                let (Ok(u), Ok(v)) = (exp_bivector(&(plane * (-q * theta / 2.0))), exp_bivector(&(plane * (q * theta / 2.0)))) else {
                    return f64::INFINITY;
                };
                let (c, s) = ((q * theta).cos(), (q * theta).sin());
                let expected = [e[0], e[1] * c + e[2] * s, e[1] * -s + e[2] * c, e[3]];
                (0..4).fold(0.0, |acc, a| worst(acc, (u.gp(&e[a]).gp(&v) - expected[a]).sup_norm()))
            }),
        )
    });
    rec.at_most(
        "leg_rotation",
        "e^{−qe21θ/2} e^1 e^{qe21θ/2} = cos qθ e^1 + sin qθ e^2, e^2 ↦ −sin qθ e^1 + cos qθ e^2, e^0, e^3 fixed",
        1e-10,
        Ok(legs),
    );

    rec.finish()
}
