use nalgebra::DMatrix;
use num_complex::Complex64;
use sta_core::clifford::{complexify, eta, exp_bivector, CMultivector, Multivector};
use sta_core::sample;
use sta_core::spin::{
    complex_ideal_from_dhsf, dhsf_from_ideal, idempotent_e, idempotent_f, project_ideal_left, spin_plane_phase,
    ComplexMatrix, GammaRep,
};

use super::{worst, Context, Recorder};
use crate::report::Check;

pub const CHECKS: &[&str] = &[
    "generator_relations",
    "associativity",
    "reversion_law",
    "grade_bookkeeping",
    "exp_inverse",
    "complexify_homomorphism",
    "idempotent_e",
    "idempotent_f",
    "dhsf_round_trip",
    "ideal_dimension",
    "rho_homomorphism",
    "rho_f_idempotent",
    "rho_f_rank",
    "rho_f_eigenvalues",
    "column_round_trip",
    "spin_plane_phase",
];

const TRIPLES: usize = 1000;
const PAIRS: usize = 100;

fn mat_norm(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, worst)
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng("algebra");
    let mut rec = Recorder::new(ctx, "algebra");
    let e = Multivector::basis_vector;

    let gen = (0..16).fold(0.0, |acc, k| {
        let (a, b) = (k / 4, k % 4);
        worst(acc, (e(a).gp(&e(b)) + e(b).gp(&e(a)) - Multivector::scalar(2.0 * eta(a, b))).sup_norm())
    });
    rec.at_most("generator_relations", "E^aE^b + E^bE^a = 2η^ab", 0.0, Ok(gen));

    let mut assoc = 0.0;
    let mut rev = 0.0;
    let mut grades = 0.0;
    for _ in 0..TRIPLES {
        let (a, b, c) = (sample::multivector(&mut rng), sample::multivector(&mut rng), sample::multivector(&mut rng));
        assoc = worst(assoc, (a.gp(&b).gp(&c) - a.gp(&b.gp(&c))).sup_norm());
        rev = worst(rev, (a.gp(&b).reverse() - b.reverse().gp(&a.reverse())).sup_norm());
        let sum: Multivector = (0..=4).map(|k| a.grade_proj(k)).sum();
        grades = worst(grades, (sum - a).sup_norm());
    }
    rec.at_most("associativity", "(ab)c = a(bc)", 1e-12, Ok(assoc));
    rec.at_most("reversion_law", "(ab)~ = b̃ã", 1e-12, Ok(rev));
    rec.at_most("grade_bookkeeping", "Σ_k ⟨a⟩_k = a", 0.0, Ok(grades));

    let mut exp_dev = 0.0;
    let mut cx = 0.0;
    for _ in 0..PAIRS {
        let b = sample::bivector(&mut rng);
        let measured = exp_bivector(&b).and_then(|u| Ok((u.gp(&exp_bivector(&-b)?) - Multivector::ONE).sup_norm()));
        exp_dev = worst(exp_dev, measured.unwrap_or(f64::INFINITY));
        let (x, y) = (sample::multivector(&mut rng), sample::multivector(&mut rng));
        cx = worst(cx, (complexify(&x.gp(&y)) - complexify(&x).gp(&complexify(&y))).sup_norm());
    }
    rec.at_most("exp_inverse", "exp(B) exp(−B) = 1", 1e-12, Ok(exp_dev));
    rec.at_most("complexify_homomorphism", "1⊗(ab) = (1⊗a)(1⊗b)", 0.0, Ok(cx));

    let ie = idempotent_e();
    let f = idempotent_f();
    rec.at_most("idempotent_e", "e² = e", 0.0, Ok((ie.gp(&ie) - ie).sup_norm()));
    rec.at_most("idempotent_f", "f² = f", 1e-15, Ok((f.gp(&f) - f).sup_norm()));

    let round_trip = (0..PAIRS).try_fold(0.0, |acc, _| {
        let psi = sample::even(&mut rng);
        Ok(worst(acc, (dhsf_from_ideal(&project_ideal_left(&psi))? - psi).sup_norm()))
    });
    rec.at_most("dhsf_round_trip", "ψ = 2⟨ψe⟩_even", 0.0, round_trip);

    // Rank of a ↦ ae on the 16 blade coordinates.
    let right_e = DMatrix::from_fn(16, 16, |r, k| {
        let mut basis = [0.0; 16];
        basis[k] = 1.0;
        Multivector::new(basis).gp(&ie).coeffs[r]
    });
    rec.expected("ideal_dimension", "dim_R R_{1,3}e = 8", 0.0, 8.0, Ok(right_e.rank(1e-12) as f64));

    let rep = GammaRep::dirac();
    let mut hom = 0.0;
    for _ in 0..PAIRS {
        let u = CMultivector::from_parts(&sample::multivector(&mut rng), &sample::multivector(&mut rng));
        let v = CMultivector::from_parts(&sample::multivector(&mut rng), &sample::multivector(&mut rng));
        hom = worst(hom, mat_norm(&(rep.rho(&u.gp(&v)) - rep.rho(&u) * rep.rho(&v))));
    }
    rec.at_most("rho_homomorphism", "ρ(ab) = ρ(a)ρ(b)", 1e-10, Ok(hom));

    let rf = rep.rho(&f);
    rec.at_most("rho_f_idempotent", "ρ(f)² = ρ(f)", 1e-12, Ok(mat_norm(&(rf * rf - rf))));
    // Complex rank via the real 8×8 form, which has twice the rank.
    let real = DMatrix::from_fn(8, 8, |r, k| {
        let z = rf[(r % 4, k % 4)];
        match (r < 4, k < 4) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    rec.expected("rho_f_rank", "rank ρ(f) = 1", 0.0, 1.0, Ok(real.rank(1e-12) as f64 / 2.0));
    let (_, t) = rf.schur().unpack();
    let mut eig: Vec<Complex64> = t.diagonal().iter().copied().collect();
    eig.sort_by(|a, b| b.re.total_cmp(&a.re));
    let target = [1.0, 0.0, 0.0, 0.0];
    let eig_dev = eig.iter().zip(target).fold(0.0, |acc, (z, t)| worst(acc, (z - t).norm()));
    rec.at_most("rho_f_eigenvalues", "eigenvalues of ρ(f) are 1, 0, 0, 0", 1e-12, Ok(eig_dev));

    let columns = (0..PAIRS).try_fold(0.0, |acc, _| {
        let psi = complex_ideal_from_dhsf(&sample::even(&mut rng))?;
        let col = rep.column_from_ideal(&psi)?;
        Ok(worst(acc, (rep.ideal_from_column(&col) - psi).sup_norm()))
    });
    rec.at_most("column_round_trip", "ρ⁻¹(col(Ψ)) = Ψ on the ideal", 1e-14, columns);

    let c = spin_plane_phase();
    // Read off in the matrix picture, independent of the algebra routine.
    let phase = worst((complexify(&Multivector::spin_plane()).gp(&f) - f * c).sup_norm(), mat_norm(&(rep.rho_real(&Multivector::spin_plane()) * rf - rf * c)));
    rec.at_most("spin_plane_phase", "E^21 f = c f, ρ(E^21)ρ(f) = c ρ(f)", 1e-15, Ok(phase));

    rec.finish()
}
