use sta_core::field::FieldKind;
use sta_core::sample;
use sta_core::spacetime::Setup;
use sta_core::spin::idempotent_e;
use sta_core::Error;

use super::{relative, worst, Context, Recorder};
use crate::report::Check;

pub const CHECKS: &[&str] = &["flat_identity", "grade_preservation", "reversal_norm_order", "pairing_commutes", "ideal_stability"];

const SAMPLES: usize = 4;

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng("transport");
    let mut rec = Recorder::new(ctx, "transport");
    let curve = ctx.curve();
    let steps = ctx.steps;
    let flat = Setup::minkowski(ctx.setup().chart.clone());
    let curved = ctx.curved_setup(&mut rng);

    let identity = (0..SAMPLES).try_fold(0.0, |acc, _| {
        let a = sample::multivector(&mut rng);
        [FieldKind::Clifford, FieldKind::LeftSpinor, FieldKind::RightSpinor].into_iter().try_fold(acc, |acc, kind| {
            Ok::<f64, Error>(worst(acc, (flat.parallel_transport(&a, kind, &curve, steps)? - a).sup_norm()))
        })
    });
    rec.at_most("flat_identity", "ω = 0 ⇒ transport is the identity", 1e-12, identity);

    let grades = (0..SAMPLES).try_fold(0.0, |acc, _| {
        let a = sample::multivector(&mut rng);
        (0..=4).try_fold(acc, |acc, k| {
            let out = curved.parallel_transport(&a.grade_proj(k), FieldKind::Clifford, &curve, steps)?;
            Ok::<f64, Error>(worst(acc, (out - out.grade_proj(k)).sup_norm()))
        })
    });
    rec.at_most("grade_preservation", "⟨τ(A_k)⟩_k = τ(A_k)", 1e-9, grades);

    // Fourth order: halving the step divides the drift of ⟨ÃA⟩₀ by about 16.
    let coarse = (steps / 32).max(4);
    let a = sample::multivector(&mut rng);
    let target = a.reverse().gp(&a).scalar_part();
    let drift = |n: usize| -> Result<f64, Error> {
        let out = curved.parallel_transport(&a, FieldKind::Clifford, &curve, n)?;
        Ok((out.reverse().gp(&out).scalar_part() - target).abs())
    };
    let ratio = drift(coarse).and_then(|c| Ok(c / drift(2 * coarse)?));
    rec.at_least("reversal_norm_order", "drift of ⟨ÃA⟩₀ shrinks ≥ 12× when steps double", 12.0, ratio);

    let pairing = (0..SAMPLES).try_fold(0.0, |acc, _| {
        let (psi, phi) = (sample::multivector(&mut rng), sample::multivector(&mut rng));
        let psi_t = curved.parallel_transport(&psi, FieldKind::LeftSpinor, &curve, steps)?;
        let phi_t = curved.parallel_transport(&phi, FieldKind::RightSpinor, &curve, steps)?;
        let prod_t = curved.parallel_transport(&psi.gp(&phi), FieldKind::Clifford, &curve, steps)?;
        Ok::<f64, Error>(worst(acc, relative((psi_t.gp(&phi_t) - prod_t).sup_norm(), prod_t.sup_norm())))
    });
    rec.at_most("pairing_commutes", "τ(Ψ)τ(Φ) = τ(ΨΦ)", 1e-7, pairing);

    let e = idempotent_e();
    let ideal = (0..SAMPLES).try_fold(0.0, |acc, _| {
        let psi = sample::multivector(&mut rng).gp(&e);
        let out = curved.parallel_transport(&psi, FieldKind::LeftSpinor, &curve, steps)?;
        Ok::<f64, Error>(worst(acc, relative((out.gp(&e) - out).sup_norm(), out.sup_norm())))
    });
    rec.at_most("ideal_stability", "τ(Ψe)e = τ(Ψe)", 1e-9, ideal);

    rec.finish()
}
