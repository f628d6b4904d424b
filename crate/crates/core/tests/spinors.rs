use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sta_core::clifford::{complexify, CMultivector, Multivector};
use sta_core::spin::*;
use sta_core::{sample, Error};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dirac-basis gamma matrices written out from the Pauli matrices.
fn reference_gammas() -> [Matrix4<Complex64>; 4] {
    let zero = Matrix2::<Complex64>::zeros();
    let id = Matrix2::<Complex64>::identity();
    let sigma = [
        Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        Matrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
    ];
    let block = |a: &Matrix2<Complex64>, b: &Matrix2<Complex64>, cc: &Matrix2<Complex64>, d: &Matrix2<Complex64>| {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(cc);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
        m
    };
    [
        block(&id, &zero, &zero, &(-id)),
        block(&zero, &sigma[0], &(-sigma[0]), &zero),
        block(&zero, &sigma[1], &(-sigma[1]), &zero),
        block(&zero, &sigma[2], &(-sigma[2]), &zero),
    ]
}

fn mat_norm(m: &Matrix4<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn gammas_match_the_dirac_basis() {
    let rep = GammaRep::dirac();
    for (a, g) in reference_gammas().iter().enumerate() {
        assert_eq!(rep.gamma(a), g);
        assert_eq!(&rep.rho_real(&Multivector::basis_vector(a)), g);
    }
}

#[test]
fn clifford_relation_for_gammas() {
    let rep = GammaRep::dirac();
    for a in 0..4 {
        for b in 0..4 {
            let anti = rep.gamma(a) * rep.gamma(b) + rep.gamma(b) * rep.gamma(a);
            let eta = if a != b { 0.0 } else if a == 0 { 1.0 } else { -1.0 };
            assert_eq!(anti, Matrix4::identity() * c(2.0 * eta, 0.0));
        }
    }
    assert_eq!(rep.rho(&CMultivector::one()), Matrix4::identity());
}

#[test]
fn idempotents_square_to_themselves() {
    let e = idempotent_e();
    assert_eq!(e.gp(&e), e);
    let f = idempotent_f();
    assert!((f.gp(&f) - f).sup_norm() < 1e-15);
}

#[test]
fn left_ideal_has_real_dimension_eight() {
    // Matrix of a ↦ a e on the 16 blade coordinates.
    let e = idempotent_e();
    let mut m = DMatrix::<f64>::zeros(16, 16);
    for k in 0..16 {
        let mut basis = [0.0; 16];
        basis[k] = 1.0;
        let image = Multivector::new(basis).gp(&e);
        for r in 0..16 {
            m[(r, k)] = image.coeffs[r];
        }
    }
    assert_eq!(m.rank(1e-12), 8);
}

#[test]
fn random_projections_span_eight_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut m = DMatrix::<f64>::zeros(16, 16);
    for k in 0..16 {
        let image = project_ideal_left(&sample::multivector(&mut rng));
        for r in 0..16 {
            m[(r, k)] = image.coeffs[r];
        }
    }
    assert_eq!(m.rank(1e-10), 8);
}

#[test]
fn image_of_f_is_a_rank_one_projector() {
    let rep = GammaRep::dirac();
    let rf = rep.rho(&idempotent_f());
    assert!(mat_norm(&(rf * rf - rf)) < 1e-15);
    // An idempotent has eigenvalues in {0, 1}; the number of ones is its trace.
    assert!((rf.trace() - c(1.0, 0.0)).norm() < 1e-15);
    let real: DMatrix<f64> = DMatrix::from_fn(8, 8, |r, k| {
        let z = rf[(r % 4, k % 4)];
        match (r < 4, k < 4) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    assert_eq!(real.rank(1e-12), 2);
}

#[test]
fn column_slot_and_phase_match_matrix_oracle() {
    let rep = GammaRep::dirac();
    let rf = rep.rho(&idempotent_f());
    let slot = (0..4).find(|&k| rf[(k, k)].norm() > 0.5).unwrap();
    assert_eq!(rep.slot(), slot);
    // Phase from matrices: ρ(E^2E^1) ρ(f) = c ρ(f).
    let lhs = rep.rho_real(&Multivector::spin_plane()) * rf;
    let phase = lhs[(slot, slot)] / rf[(slot, slot)];
    assert!(mat_norm(&(lhs - rf * phase)) < 1e-15);
    assert!((spin_plane_phase() - phase).norm() < 1e-15);
    assert_eq!(spin_plane_phase(), c(0.0, -1.0));
}

#[test]
fn unit_and_zero_columns() {
    let rep = GammaRep::dirac();
    let col = rep.column_from_ideal(&idempotent_f()).unwrap();
    for k in 0..4 {
        let expected = if k == rep.slot() { c(1.0, 0.0) } else { c(0.0, 0.0) };
        assert!((col[k] - expected).norm() < 1e-15);
    }
    assert_eq!(rep.column_from_ideal(&CMultivector::ZERO).unwrap(), ColumnSpinor::zeros());
}

#[test]
fn dhsf_examples() {
    assert_eq!(dhsf_from_ideal(&idempotent_e()).unwrap(), Multivector::ONE);
    // E^1 e = ½E^1 + ½E^1E^0, whose doubled even part is E^1E^0.
    let phi = Multivector::basis_vector(1).gp(&idempotent_e());
    let e10 = Multivector::basis_vector(1).gp(&Multivector::basis_vector(0));
    assert_eq!(dhsf_from_ideal(&phi).unwrap(), e10);
    assert!(matches!(dhsf_from_ideal(&Multivector::ONE), Err(Error::NotInIdeal { .. })));
    assert_eq!(complex_ideal_from_dhsf(&Multivector::ONE).unwrap(), idempotent_f());
    assert!(matches!(complex_ideal_from_dhsf(&Multivector::basis_vector(2)), Err(Error::NotEven { .. })));
}

#[test]
fn column_of_ideal_element_is_single_column() {
    let rep = GammaRep::dirac();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let psi = complex_ideal_from_dhsf(&sample::even(&mut rng)).unwrap();
        let m = rep.rho(&psi);
        for col in (0..4).filter(|&k| k != rep.slot()) {
            assert!(m.column(col).iter().all(|z| z.norm() < 1e-14));
        }
    }
}

fn unit_mv() -> impl Strategy<Value = Multivector> {
    prop::array::uniform16(-1.0f64..1.0).prop_map(Multivector::new)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn projection_is_idempotent(a in unit_mv()) {
        let p = project_ideal_left(&a);
        prop_assert!((project_ideal_left(&p) - p).sup_norm() <= 1e-15);
    }

    #[test]
    fn dhsf_round_trip(a in unit_mv()) {
        let psi = a.even_part();
        prop_assert_eq!(dhsf_from_ideal(&project_ideal_left(&psi)).unwrap(), psi);
    }

    #[test]
    fn rho_is_a_homomorphism(a in unit_mv(), b in unit_mv(), x in unit_mv(), y in unit_mv()) {
        let rep = GammaRep::dirac();
        let u = CMultivector::from_parts(&a, &b);
        let v = CMultivector::from_parts(&x, &y);
        prop_assert!(mat_norm(&(rep.rho(&u.gp(&v)) - rep.rho(&u) * rep.rho(&v))) <= 1e-10);
        prop_assert!((rep.rho_inverse(&rep.rho(&u)) - u).sup_norm() <= 1e-14);
    }

    #[test]
    fn complex_ideal_is_closed(a in unit_mv()) {
        let psi = complex_ideal_from_dhsf(&a.even_part()).unwrap();
        prop_assert!((psi.gp(&idempotent_f()) - psi).sup_norm() <= 1e-14);
        prop_assert!(check_complex_ideal(&psi).is_ok());
    }

    #[test]
    fn column_round_trip(a in unit_mv(), b in unit_mv()) {
        let rep = GammaRep::dirac();
        let psi = complexify(&a.even_part()).gp(&idempotent_f()) + complexify(&b.even_part()).gp(&idempotent_f()) * c(0.0, 1.0);
        let col = rep.column_from_ideal(&psi).unwrap();
        prop_assert!((rep.ideal_from_column(&col) - psi).sup_norm() <= 1e-14);
        let back = rep.column_from_ideal(&rep.ideal_from_column(&col)).unwrap();
        prop_assert!((back - col).iter().all(|z| z.norm() <= 1e-14));
    }
}
