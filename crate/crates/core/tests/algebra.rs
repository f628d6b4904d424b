use proptest::prelude::*;
use sta_core::clifford::{blade_mul, complexify, eta, exp_bivector, BladeIndex, CMultivector, Multivector, Signature};

/// Reference product of two basis blades: concatenate generator lists, bubble
/// sort while counting swaps, then contract equal neighbours with the metric.
fn oracle_blade_product(i: u8, j: u8, metric: &[f64]) -> (f64, u8) {
    let mut word: Vec<usize> = (0..metric.len()).filter(|g| i >> g & 1 == 1).collect();
    word.extend((0..metric.len()).filter(|g| j >> g & 1 == 1));
    let mut sign = 1.0;
    loop {
        let mut changed = false;
        let mut k = 0;
        while k + 1 < word.len() {
            if word[k] > word[k + 1] {
                word.swap(k, k + 1);
                sign = -sign;
                changed = true;
            } else if word[k] == word[k + 1] {
                sign *= metric[word[k]];
                word.drain(k..k + 2);
                changed = true;
                continue;
            }
            k += 1;
        }
        if !changed {
            break;
        }
    }
    (sign, word.iter().fold(0u8, |m, g| m | 1 << g))
}

#[test]
fn blade_table_matches_sorting_oracle() {
    let metric = [1.0, -1.0, -1.0, -1.0];
    for i in 0..16u8 {
        for j in 0..16u8 {
            let (s, k) = blade_mul(BladeIndex(i), BladeIndex(j), Signature::SPACETIME);
            assert_eq!((s, k.0), oracle_blade_product(i, j, &metric), "{i} * {j}");
        }
    }
}

#[test]
fn blade_product_is_signature_generic() {
    let sig = Signature::new(3, 2).unwrap();
    let metric = [1.0, 1.0, 1.0, -1.0, -1.0];
    for i in 0..32u8 {
        for j in 0..32u8 {
            let (s, k) = blade_mul(BladeIndex(i), BladeIndex(j), sig);
            assert_eq!((s, k.0), oracle_blade_product(i, j, &metric));
        }
    }
    assert!(Signature::new(5, 4).is_err());
}

#[test]
fn generator_relations_are_exact() {
    for a in 0..4 {
        for b in 0..4 {
            let ea = Multivector::basis_vector(a);
            let eb = Multivector::basis_vector(b);
            assert_eq!(ea.gp(&eb) + eb.gp(&ea), Multivector::ONE * (2.0 * eta(a, b)));
        }
    }
}

#[test]
fn metric_values() {
    let s = Signature::SPACETIME;
    assert_eq!(blade_mul(BladeIndex(1), BladeIndex(1), s), (1.0, BladeIndex::SCALAR));
    assert_eq!(blade_mul(BladeIndex(2), BladeIndex(2), s), (-1.0, BladeIndex::SCALAR));
    assert_eq!(blade_mul(BladeIndex(15), BladeIndex(15), s), (-1.0, BladeIndex::SCALAR));
    for x in 0..16u8 {
        assert_eq!(blade_mul(BladeIndex::SCALAR, BladeIndex(x), s), (1.0, BladeIndex(x)));
    }
}

#[test]
fn documented_products() {
    let e = (Multivector::ONE + Multivector::basis_vector(0)) * 0.5;
    assert_eq!(e.gp(&e), e);
    assert_eq!(e.grade_proj(0), Multivector::ONE * 0.5);
    let spin = Multivector::spin_plane();
    assert_eq!(spin.gp(&spin), -Multivector::ONE);
    assert_eq!(spin.reverse(), -spin);
    assert_eq!(Multivector::basis_vector(1).even_part(), Multivector::ZERO);
    // ½[E^2E^1, E^1]: E^2E^1E^1 = −E^2 and E^1E^2E^1 = E^2, so the half commutator is −E^2.
    let c = Multivector::commutator_half(&spin, &Multivector::basis_vector(1));
    assert_eq!(c, -Multivector::basis_vector(2));
    let w = Multivector::wedge_vectors(&Multivector::basis_vector(1), &Multivector::basis_vector(2));
    assert_eq!(Multivector::commutator_half(&w, &Multivector::basis_vector(1)).grades_present(0.0), vec![1]);
    assert_eq!(Multivector::commutator_half(&w, &Multivector::ONE), Multivector::ZERO);
}

#[test]
fn gauge_rotates_spin_plane_legs() {
    let (q, theta) = (0.7, 1.9);
    let spin = Multivector::spin_plane();
    let left = exp_bivector(&(spin * (-q * theta / 2.0))).unwrap();
    let right = exp_bivector(&(spin * (q * theta / 2.0))).unwrap();
    let rotated = left.gp(&Multivector::basis_vector(1)).gp(&right);
    let expected = Multivector::basis_vector(1) * (q * theta).cos() + Multivector::basis_vector(2) * (q * theta).sin();
    assert!((rotated - expected).sup_norm() < 1e-15);
}

#[test]
fn spin_plane_exponential() {
    for k in 0..20 {
        let theta = -3.0 + 0.3 * k as f64;
        let u = exp_bivector(&(Multivector::spin_plane() * theta)).unwrap();
        let expected = Multivector::ONE * theta.cos() + Multivector::spin_plane() * theta.sin();
        assert!((u - expected).sup_norm() < 1e-15);
        assert!((u.reverse().gp(&u) - Multivector::ONE).sup_norm() < 1e-15);
    }
}

fn unit_mv() -> impl Strategy<Value = Multivector> {
    prop::array::uniform16(-1.0f64..1.0).prop_map(Multivector::new)
}

fn blade() -> impl Strategy<Value = (u8, f64)> {
    (0u8..16, -1.0f64..1.0)
}

fn bivector() -> impl Strategy<Value = Multivector> {
    unit_mv().prop_map(|m| m.grade_proj(2))
}

fn simple_bivector() -> impl Strategy<Value = Multivector> {
    (unit_mv(), unit_mv()).prop_map(|(a, b)| Multivector::wedge_vectors(&a.grade_proj(1), &b.grade_proj(1)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn associativity(a in unit_mv(), b in unit_mv(), c in unit_mv()) {
        let lhs = a.gp(&b).gp(&c);
        let rhs = a.gp(&b.gp(&c));
        prop_assert!((lhs - rhs).sup_norm() <= 1e-12);
    }

    #[test]
    fn reversion_is_an_anti_automorphism(a in unit_mv(), b in unit_mv()) {
        prop_assert!((a.gp(&b).reverse() - b.reverse().gp(&a.reverse())).sup_norm() <= 1e-13);
    }

    #[test]
    fn reversion_sign_by_grade(a in unit_mv()) {
        for k in 0..=4usize {
            let sign = if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!(a.grade_proj(k).reverse(), a.grade_proj(k) * sign);
        }
    }

    #[test]
    fn grade_decomposition_is_direct(a in unit_mv()) {
        let sum: Multivector = (0..=4).map(|k| a.grade_proj(k)).sum();
        prop_assert_eq!(sum, a);
        prop_assert_eq!(a.even_part() + a.odd_part(), a);
    }

    #[test]
    fn grade_bookkeeping((i, x) in blade(), (j, y) in blade()) {
        let a = Multivector::blade(BladeIndex(i), x);
        let b = Multivector::blade(BladeIndex(j), y);
        let (gi, gj) = (i.count_ones() as usize, j.count_ones() as usize);
        let lo = gi.abs_diff(gj);
        for g in a.gp(&b).grades_present(0.0) {
            prop_assert!(g >= lo && g <= gi + gj && (g - lo) % 2 == 0);
        }
    }

    #[test]
    fn commutator_with_bivector_preserves_grade(w in bivector(), a in unit_mv(), k in 0usize..=4) {
        let h = a.grade_proj(k);
        let c = Multivector::commutator_half(&w, &h);
        prop_assert!((c - c.grade_proj(k)).sup_norm() <= 1e-14);
    }

    #[test]
    fn exponential_inverse(b in simple_bivector()) {
        let u = exp_bivector(&b).unwrap();
        let v = exp_bivector(&-b).unwrap();
        prop_assert!((u.gp(&v) - Multivector::ONE).sup_norm() <= 1e-9 * u.sup_norm().max(1.0).powi(2));
    }

    #[test]
    fn exponential_of_general_bivector_is_rotor(b in bivector()) {
        let u = exp_bivector(&b).unwrap();
        prop_assert!((u.reverse().gp(&u) - Multivector::ONE).sup_norm() <= 1e-10 * u.sup_norm().max(1.0).powi(2));
    }

    #[test]
    fn complexify_is_a_homomorphism(a in unit_mv(), b in unit_mv()) {
        let lhs = complexify(&a).gp(&complexify(&b));
        prop_assert!((lhs - complexify(&a.gp(&b))).sup_norm() <= 1e-14);
        prop_assert_eq!(complexify(&a).real_part(), a);
        prop_assert_eq!(complexify(&a).imag_part(), Multivector::ZERO);
    }

    #[test]
    fn complex_product_is_associative(a in unit_mv(), b in unit_mv(), c in unit_mv(), d in unit_mv()) {
        let x = CMultivector::from_parts(&a, &b);
        let y = CMultivector::from_parts(&c, &d);
        let z = CMultivector::from_parts(&b, &c);
        prop_assert!((x.gp(&y).gp(&z) - x.gp(&y.gp(&z))).sup_norm() <= 1e-12);
    }

    #[test]
    fn serde_round_trip(a in unit_mv()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Multivector = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}
