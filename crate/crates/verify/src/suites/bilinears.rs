use sta_core::dirac::{bilinear_covariants, bilinear_covariants_at, dot, make_plane_wave, Bilinears};
use sta_core::field::CliffordField;
use sta_core::sample;
use sta_core::Error;

use super::{relative, worst, Context, Recorder};
use crate::report::Check;

pub const CHECKS: &[&str] = &[
    "purity_s",
    "purity_j",
    "purity_k",
    "purity_m",
    "fierz_jj",
    "fierz_kk",
    "fierz_jk",
    "sign_invariance",
    "rest_frame",
    "scenario_purity",
];

const SAMPLES: usize = 100;

/// Off-grade parts of S, J, K, M.
fn impurity(b: &Bilinears) -> [f64; 4] {
    [
        (b.s - b.s.grade_proj(0) - b.s.grade_proj(4)).sup_norm(),
        (b.j - b.j.grade_proj(1)).sup_norm(),
        (b.k - b.k.grade_proj(1)).sup_norm(),
        (b.m - b.m.grade_proj(2)).sup_norm(),
    ]
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng("bilinears");
    let mut rec = Recorder::new(ctx, "bilinears");

    let mut purity = [0.0f64; 4];
    let mut fierz = [0.0f64; 3];
    let mut sign = 0.0f64;
    let mut failure = None;
    for _ in 0..SAMPLES {
        let psi = sample::even(&mut rng);
        let (b, neg) = match (bilinear_covariants(&psi), bilinear_covariants(&-psi)) {
            (Ok(b), Ok(n)) => (b, n),
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                continue;
            }
        };
        for (p, v) in purity.iter_mut().zip(impurity(&b)) {
            *p = worst(*p, v);
        }
        let rho2 = b.sigma * b.sigma + b.omega * b.omega;
        fierz[0] = worst(fierz[0], relative((dot(&b.j, &b.j) - rho2).abs(), rho2));
        fierz[1] = worst(fierz[1], relative((dot(&b.k, &b.k) + rho2).abs(), rho2));
        fierz[2] = worst(fierz[2], relative(dot(&b.j, &b.k).abs(), rho2));
        let diff = [neg.s - b.s, neg.j - b.j, neg.k - b.k, neg.m - b.m];
        sign = diff.iter().fold(sign, |acc, d| worst(acc, d.sup_norm()));
    }
    let result = |v: f64| failure.clone().map_or(Ok(v), Err);
    rec.at_most("purity_s", "ψψ̃ = σ + e₅ω has grades 0 and 4 only", 1e-10, result(purity[0]));
    rec.at_most("purity_j", "ψe₀ψ̃ is a vector", 1e-10, result(purity[1]));
    rec.at_most("purity_k", "ψe₃ψ̃ is a vector", 1e-10, result(purity[2]));
    rec.at_most("purity_m", "ψe₁e₂ψ̃ is a bivector", 1e-10, result(purity[3]));
    rec.at_most("fierz_jj", "J·J = σ² + ω²", 1e-9, result(fierz[0]));
    rec.at_most("fierz_kk", "K·K = −(σ² + ω²)", 1e-9, result(fierz[1]));
    rec.at_most("fierz_jk", "J·K = 0", 1e-9, result(fierz[2]));
    rec.at_most("sign_invariance", "S, J, K, M unchanged under ψ ↦ −ψ", 0.0, result(sign));

    let rest = make_plane_wave(ctx.resolved.params.m, &sta_core::clifford::Multivector::ONE).and_then(|psi| {
        ctx.grid.try_sup(|x| {
            let b = bilinear_covariants_at(&psi, x)?;
            Ok((b.sigma - 1.0).abs().max(b.omega.abs()))
        })
    });
    rec.at_most("rest_frame", "rest plane wave: σ = 1, ω = 0 at every t", 1e-12, rest);

    let scenario = CliffordField::new(ctx.resolved.unknown.clone());
    let own = ctx.grid.try_sup(|x| {
        let value = scenario.eval(x);
        let b = bilinear_covariants(&value)?;
        let scale = value.sup_norm().powi(2);
        Ok::<f64, Error>(impurity(&b).into_iter().fold(0.0, |acc, v| worst(acc, relative(v, scale))))
    });
    rec.at_most("scenario_purity", "grade purity of the scenario field's bilinears", 1e-10, own);

    rec.finish()
}
