//! Primitive idempotents, minimal left ideals and the `ℂ(4)` matrix picture.
//!
//! The real ideal `I = R_{1,3} e` with `e = ½(1 + E^0)` holds the algebraic
//! spinors; every element of it is `ψ e` for a unique even `ψ`. The complex
//! ideal `I_ℂ = (ℂ ⊗ R_{1,3}) f` with `f = e · ½(1 + i E^2 E^1)` is carried to
//! column spinors in `ℂ^4` by a faithful matrix representation.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::clifford::{complexify, spacetime_blades, BladeIndex, CMultivector, Multivector, BLADES};
use crate::error::Error;

/// Absolute tolerance for ideal-membership and parity checks at unit scale.
pub const IDEAL_TOL: f64 = 1e-10;

pub type ComplexMatrix = Matrix4<Complex64>;

/// A column spinor, an element of `ℂ^4`.
pub type ColumnSpinor = Vector4<Complex64>;

fn scaled_tol(norm: f64) -> f64 {
    IDEAL_TOL * norm.max(1.0)
}

/// `e = ½(1 + E^0)`.
pub fn idempotent_e() -> Multivector {
    (Multivector::ONE + Multivector::basis_vector(0)) * 0.5
}

/// `f = ½(1 + E^0) · ½(1 + i E^2 E^1)`.
pub fn idempotent_f() -> CMultivector {
    let plane = (CMultivector::one() + CMultivector::imaginary_unit() * complexify(&Multivector::spin_plane())) * 0.5;
    complexify(&idempotent_e()) * plane
}

/// The constant `c` with `E^2 E^1 f = c f`, found by direct multiplication.
///
/// Right multiplication by `E^2E^1` therefore acts on the complex ideal as
/// multiplication by `c`; the complex and column forms of the Dirac equation
/// use `c` as their imaginary unit.
pub fn spin_plane_phase() -> Complex64 {
    let f = idempotent_f();
    let image = complexify(&Multivector::spin_plane()) * f;
    let pivot = f
        .coeffs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let c = image.coeffs[pivot] / f.coeffs[pivot];
    debug_assert!((image - f.scale(c)).sup_norm() < 1e-14);
    c
}

/// `a ↦ a e`, the projection onto the left ideal.
pub fn project_ideal_left(a: &Multivector) -> Multivector {
    a.gp(&idempotent_e())
}

/// Recovers the even `ψ` with `ψ e = φ` for an ideal element `φ`.
pub fn dhsf_from_ideal(phi: &Multivector) -> Result<Multivector, Error> {
    let tol = scaled_tol(phi.sup_norm());
    let deviation = (project_ideal_left(phi) - *phi).sup_norm();
    if deviation > tol {
        return Err(Error::NotInIdeal { deviation });
    }
    let psi = phi.even_part() * 2.0;
    let deviation = (project_ideal_left(&psi) - *phi).sup_norm();
    if deviation > tol {
        return Err(Error::InconsistentParity { deviation });
    }
    Ok(psi)
}

/// `ψ ↦ ψ f` for even `ψ`.
pub fn complex_ideal_from_dhsf(psi: &Multivector) -> Result<CMultivector, Error> {
    let odd = psi.odd_part().sup_norm();
    if odd > scaled_tol(psi.sup_norm()) {
        return Err(Error::NotEven { odd });
    }
    Ok(complexify(psi) * idempotent_f())
}

/// Checks `Ψ f = Ψ`.
pub fn check_complex_ideal(psi: &CMultivector) -> Result<(), Error> {
    let deviation = (*psi * idempotent_f() - *psi).sup_norm();
    if deviation > scaled_tol(psi.sup_norm()) {
        return Err(Error::NotInIdeal { deviation });
    }
    Ok(())
}

/// A faithful representation of `ℂ ⊗ R_{1,3}` on `ℂ^4` (Dirac basis, `γ^0`
/// diagonal).
#[derive(Clone, Debug, PartialEq)]
pub struct GammaRep {
    gammas: [ComplexMatrix; 4],
    blades: [ComplexMatrix; BLADES],
    /// Index of the column picked out by `ρ(f)`.
    slot: usize,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl GammaRep {
    /// Builds the Dirac-basis representation.
    pub fn dirac() -> Self {
        let o = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        #[rustfmt::skip]
        let gammas = [
            ComplexMatrix::new(
                one, o, o, o,
                o, one, o, o,
                o, o, -one, o,
                o, o, o, -one,
            ),
            ComplexMatrix::new(
                o, o, o, one,
                o, o, one, o,
                o, -one, o, o,
                -one, o, o, o,
            ),
            ComplexMatrix::new(
                o, o, o, -i,
                o, o, i, o,
                o, i, o, o,
                -i, o, o, o,
            ),
            ComplexMatrix::new(
                o, o, one, o,
                o, o, o, -one,
                -one, o, o, o,
                o, one, o, o,
            ),
        ];
        let blades = std::array::from_fn(|k| {
            BladeIndex(k as u8)
                .generators()
                .fold(ComplexMatrix::identity(), |acc, a| acc * gammas[a])
        });
        let mut rep = GammaRep { gammas, blades, slot: 0 };
        let image = rep.rho(&idempotent_f());
        rep.slot = (0..4)
            .max_by(|&a, &b| image[(a, a)].norm().total_cmp(&image[(b, b)].norm()))
            .unwrap_or(0);
        rep
    }

    pub fn gamma(&self, a: usize) -> &ComplexMatrix {
        &self.gammas[a]
    }

    /// Column of `ρ(Ψ)` that carries an ideal element.
    pub fn slot(&self) -> usize {
        self.slot
    }

    /// Matrix image of a complex multivector.
    pub fn rho(&self, a: &CMultivector) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros();
        for (k, coeff) in a.coeffs.iter().enumerate() {
            if *coeff != c(0.0, 0.0) {
                m += self.blades[k] * *coeff;
            }
        }
        m
    }

    pub fn rho_real(&self, a: &Multivector) -> ComplexMatrix {
        self.rho(&complexify(a))
    }

    /// Inverse of [`GammaRep::rho`] via `a_I = tr(ρ(E_I)^{-1} M) / 4`.
    pub fn rho_inverse(&self, m: &ComplexMatrix) -> CMultivector {
        let mut out = CMultivector::ZERO;
        for b in spacetime_blades() {
            // E_I² = ±1, so ρ(E_I)^{-1} = ±ρ(E_I).
            let blade = Multivector::blade(b, 1.0);
            let sign = blade.gp(&blade).scalar_part();
            let trace = (self.blades[b.index()] * m).trace();
            out.coeffs[b.index()] = trace * (sign / 4.0);
        }
        out
    }

    /// Column spinor of an element of the complex ideal.
    pub fn column_from_ideal(&self, psi: &CMultivector) -> Result<ColumnSpinor, Error> {
        check_complex_ideal(psi)?;
        Ok(self.column_unchecked(psi))
    }

    /// Distinguished column of `ρ(Ψ)` without the membership check.
    pub fn column_unchecked(&self, psi: &CMultivector) -> ColumnSpinor {
        self.rho(psi).column(self.slot).into_owned()
    }

    /// Ideal element whose matrix has `column` in the distinguished slot and
    /// zeros elsewhere.
    pub fn ideal_from_column(&self, column: &ColumnSpinor) -> CMultivector {
        let mut m = ComplexMatrix::zeros();
        m.set_column(self.slot, column);
        self.rho_inverse(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::eta;

    fn random_even(seed: u64) -> Multivector {
        // Small deterministic generator so the unit tests do not need rand.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut m = Multivector::ZERO;
        for b in spacetime_blades().filter(|b| b.grade() % 2 == 0) {
            m.coeffs[b.index()] = next();
        }
        m
    }

    #[test]
    fn idempotents_square_to_themselves() {
        let e = idempotent_e();
        assert_eq!(e * e, e);
        let f = idempotent_f();
        assert!((f * f - f).sup_norm() < 1e-15);
    }

    #[test]
    fn projection_is_idempotent_and_fixes_e() {
        assert_eq!(project_ideal_left(&idempotent_e()), idempotent_e());
        let a = random_even(3) + Multivector::basis_vector(2) * 0.4;
        let p = project_ideal_left(&a);
        assert!((project_ideal_left(&p) - p).sup_norm() < 1e-15);
    }

    #[test]
    fn dhsf_of_e_is_one() {
        assert_eq!(dhsf_from_ideal(&idempotent_e()).unwrap(), Multivector::ONE);
    }

    #[test]
    fn dhsf_round_trip() {
        for seed in 0..20 {
            let psi = random_even(seed);
            let back = dhsf_from_ideal(&project_ideal_left(&psi)).unwrap();
            assert!((back - psi).sup_norm() < 1e-15);
        }
    }

    #[test]
    fn non_ideal_element_is_rejected() {
        let err = dhsf_from_ideal(&Multivector::basis_vector(1)).unwrap_err();
        assert!(matches!(err, Error::NotInIdeal { .. }));
    }

    #[test]
    fn odd_input_is_rejected_by_complex_lift() {
        let err = complex_ideal_from_dhsf(&Multivector::basis_vector(0)).unwrap_err();
        assert!(matches!(err, Error::NotEven { .. }));
    }

    #[test]
    fn unit_spinor_lifts_to_f() {
        let lifted = complex_ideal_from_dhsf(&Multivector::ONE).unwrap();
        assert!((lifted - idempotent_f()).sup_norm() < 1e-15);
    }

    #[test]
    fn gamma_matrices_satisfy_clifford_relations() {
        let rep = GammaRep::dirac();
        for a in 0..4 {
            for b in 0..4 {
                let anti = rep.gamma(a) * rep.gamma(b) + rep.gamma(b) * rep.gamma(a);
                let expected = ComplexMatrix::identity() * c(2.0 * eta(a, b), 0.0);
                assert!((anti - expected).norm() < 1e-15, "pair ({a},{b})");
            }
        }
        assert_eq!(rep.rho(&CMultivector::one()), ComplexMatrix::identity());
    }

    #[test]
    fn rho_of_f_is_a_rank_one_projector() {
        let rep = GammaRep::dirac();
        let pf = rep.rho(&idempotent_f());
        assert!((pf * pf - pf).norm() < 1e-15);
        let mut expected = ComplexMatrix::zeros();
        expected[(rep.slot(), rep.slot())] = c(1.0, 0.0);
        assert!((pf - expected).norm() < 1e-15);
        assert_eq!(rep.slot(), 1);
    }

    #[test]
    fn rho_inverse_round_trip() {
        let rep = GammaRep::dirac();
        let a = CMultivector::from_parts(&random_even(5), &(random_even(6) + Multivector::basis_vector(3)));
        let back = rep.rho_inverse(&rep.rho(&a));
        assert!((back - a).sup_norm() < 1e-14);
    }

    #[test]
    fn column_of_f_is_a_unit_vector() {
        let rep = GammaRep::dirac();
        let col = rep.column_from_ideal(&idempotent_f()).unwrap();
        let mut expected = ColumnSpinor::zeros();
        expected[rep.slot()] = c(1.0, 0.0);
        assert!((col - expected).norm() < 1e-15);
        assert_eq!(rep.column_from_ideal(&CMultivector::ZERO).unwrap(), ColumnSpinor::zeros());
    }

    #[test]
    fn column_rejects_non_ideal_input() {
        let rep = GammaRep::dirac();
        assert!(rep.column_from_ideal(&CMultivector::one()).is_err());
    }

    #[test]
    fn spin_plane_phase_is_minus_i() {
        // E^21 commutes with e and E^21 · ½(1 + iE^21) = ½(E^21 − i) = −i · ½(1 + iE^21).
        let phase = spin_plane_phase();
        assert!((phase - c(0.0, -1.0)).norm() < 1e-15);
    }
}
