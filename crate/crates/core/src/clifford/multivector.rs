use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::blade::{spacetime_blades, BladeIndex, Signature, SPACETIME_SIGNS};
use crate::error::Error;

/// Number of blades in `R_{1,3}`.
pub const BLADES: usize = 16;

/// Element of the spacetime algebra `R_{1,3}`, stored as 16 blade
/// coefficients in the upper-index basis `E^I`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Multivector {
    pub coeffs: [f64; BLADES],
}

impl Multivector {
    pub const ZERO: Multivector = Multivector { coeffs: [0.0; BLADES] };
    pub const ONE: Multivector = Multivector::scalar(1.0);

    pub const fn new(coeffs: [f64; BLADES]) -> Self {
        Multivector { coeffs }
    }

    pub const fn scalar(s: f64) -> Self {
        let mut coeffs = [0.0; BLADES];
        coeffs[0] = s;
        Multivector { coeffs }
    }

    pub fn blade(blade: BladeIndex, value: f64) -> Self {
        let mut m = Self::ZERO;
        m.coeffs[blade.index()] = value;
        m
    }

    /// Upper-index generator `E^a`.
    pub fn basis_vector(a: usize) -> Self {
        Self::blade(BladeIndex::generator(a), 1.0)
    }

    /// Lower-index generator `E_a = η_{ab} E^b`.
    pub fn lower_basis_vector(a: usize) -> Self {
        Self::blade(BladeIndex::generator(a), Signature::SPACETIME.metric(a))
    }

    /// Vector `v_a E^a` from covariant components.
    pub fn vector_from_covariant(v: [f64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (a, &va) in v.iter().enumerate() {
            m.coeffs[1 << a] = va;
        }
        m
    }

    /// Vector `v^a E_a` from contravariant components.
    pub fn vector_from_contravariant(v: [f64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (a, &va) in v.iter().enumerate() {
            m.coeffs[1 << a] = Signature::SPACETIME.metric(a) * va;
        }
        m
    }

    /// Contravariant components `v^a` of the grade-1 part.
    pub fn contravariant(&self) -> [f64; 4] {
        std::array::from_fn(|a| Signature::SPACETIME.metric(a) * self.coeffs[1 << a])
    }

    /// Parses a product of generators such as `"e21"` or `"1"` into a signed
    /// blade. Indices need not be in canonical order.
    pub fn parse_blade(name: &str) -> Result<Self, Error> {
        let name = name.trim();
        if name == "1" {
            return Ok(Self::ONE);
        }
        let digits = name
            .strip_prefix('e')
            .filter(|d| !d.is_empty())
            .ok_or_else(|| Error::BadBlade(name.to_string()))?;
        let mut out = Self::ONE;
        for ch in digits.chars() {
            let a = ch
                .to_digit(10)
                .filter(|&a| a < 4)
                .ok_or_else(|| Error::BadBlade(name.to_string()))?;
            out = out * Self::basis_vector(a as usize);
        }
        Ok(out)
    }

    /// The spin-plane bivector `E^2 E^1`.
    pub fn spin_plane() -> Self {
        Self::basis_vector(2) * Self::basis_vector(1)
    }

    /// The pseudoscalar `E^0 E^1 E^2 E^3`.
    pub fn pseudoscalar() -> Self {
        Self::blade(BladeIndex(0b1111), 1.0)
    }

    pub fn get(&self, blade: BladeIndex) -> f64 {
        self.coeffs[blade.index()]
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Geometric product.
    pub fn gp(&self, rhs: &Self) -> Self {
        // Rows with a zero coefficient are skipped: most operands are even,
        // scalar or vector and so mostly zero.
        let mut out = [0.0; BLADES];
        for i in 0..BLADES {
            let a = self.coeffs[i];
            if a == 0.0 {
                continue;
            }
            for j in 0..BLADES {
                out[i ^ j] += SPACETIME_SIGNS[i][j] * a * rhs.coeffs[j];
            }
        }
        Multivector { coeffs: out }
    }

    pub fn grade_proj(&self, k: usize) -> Self {
        self.filter(|b| b.grade() == k)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|b| b.grade() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|b| b.grade() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(BladeIndex) -> bool) -> Self {
        let mut out = Self::ZERO;
        for b in spacetime_blades() {
            if keep(b) {
                out.coeffs[b.index()] = self.coeffs[b.index()];
            }
        }
        out
    }

    /// Reversion: sign `(-1)^{k(k-1)/2}` on grade `k`.
    pub fn reverse(&self) -> Self {
        let mut out = *self;
        for b in spacetime_blades() {
            let k = b.grade();
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                out.coeffs[b.index()] = -out.coeffs[b.index()];
            }
        }
        out
    }

    /// `½(wa − aw)`.
    pub fn commutator_half(w: &Self, a: &Self) -> Self {
        (w.gp(a) - a.gp(w)) * 0.5
    }

    /// Largest absolute blade coefficient.
    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| {
            if c.is_nan() {
                f64::INFINITY
            } else {
                m.max(c.abs())
            }
        })
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Grades carrying a coefficient above `tol`.
    pub fn grades_present(&self, tol: f64) -> Vec<usize> {
        let mut grades: Vec<usize> = spacetime_blades()
            .filter(|b| self.coeffs[b.index()].abs() > tol)
            .map(|b| b.grade())
            .collect();
        grades.sort_unstable();
        grades.dedup();
        grades
    }

    /// Outer product of two vectors, `½(ab − ba)`.
    pub fn wedge_vectors(a: &Self, b: &Self) -> Self {
        Self::commutator_half(a, b)
    }

    /// Inverse of a versor-like element via `ã / (a ã)`; `None` when `aã` is
    /// not a nonzero scalar.
    pub fn versor_inverse(&self) -> Option<Self> {
        let rev = self.reverse();
        let norm = self.gp(&rev);
        let s = norm.scalar_part();
        if s.abs() < 1e-300 || (norm - Self::scalar(s)).sup_norm() > 1e-10 * s.abs().max(1.0) {
            return None;
        }
        Some(rev * (1.0 / s))
    }
}

/// Serialised as a map from blade name to coefficient, e.g.
/// `{"1": 0.5, "e21": -1.0}`. Names may list generators in any order.
impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let nonzero: Vec<BladeIndex> = spacetime_blades().filter(|b| self.coeffs[b.index()] != 0.0).collect();
        let mut map = serializer.serialize_map(Some(nonzero.len()))?;
        for b in nonzero {
            map.serialize_entry(&b.to_string(), &self.coeffs[b.index()])?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct BladeMap;

        impl<'de> Visitor<'de> for BladeMap {
            type Value = Multivector;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from blade names to coefficients")
            }

            fn visit_map<M: MapAccess<'de>>(self, mut access: M) -> Result<Multivector, M::Error> {
                let mut out = Multivector::ZERO;
                while let Some((name, value)) = access.next_entry::<String, f64>()? {
                    let blade = Multivector::parse_blade(&name).map_err(de::Error::custom)?;
                    out += blade * value;
                }
                Ok(out)
            }
        }

        deserializer.deserialize_map(BladeMap)
    }
}

impl Index<BladeIndex> for Multivector {
    type Output = f64;
    fn index(&self, b: BladeIndex) -> &f64 {
        &self.coeffs[b.index()]
    }
}

impl IndexMut<BladeIndex> for Multivector {
    fn index_mut(&mut self, b: BladeIndex) -> &mut f64 {
        &mut self.coeffs[b.index()]
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        self *= rhs;
        self
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs * self
    }
}

impl MulAssign<f64> for Multivector {
    fn mul_assign(&mut self, rhs: f64) {
        for a in self.coeffs.iter_mut() {
            *a *= rhs;
        }
    }
}

impl Mul for Multivector {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.gp(&rhs)
    }
}

impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs)
    }
}

impl std::iter::Sum for Multivector {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, m| acc + m)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for b in spacetime_blades() {
            let c = self.coeffs[b.index()];
            if c == 0.0 {
                continue;
            }
            if wrote {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            if b == BladeIndex::SCALAR {
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{}{}", c.abs(), b)?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize) -> Multivector {
        Multivector::basis_vector(a)
    }

    #[test]
    fn idempotent_e_squares_to_itself() {
        let idem = (Multivector::ONE + e(0)) * 0.5;
        assert_eq!(idem * idem, idem);
        assert_eq!(idem.grade_proj(0), Multivector::scalar(0.5));
    }

    #[test]
    fn spin_plane_squares_to_minus_one() {
        let b = Multivector::spin_plane();
        assert_eq!(b * b, Multivector::scalar(-1.0));
        assert_eq!(b.reverse(), e(1) * e(2));
        assert_eq!(b.reverse(), -b);
    }

    #[test]
    fn even_part_of_vector_is_zero() {
        assert_eq!(e(1).even_part(), Multivector::ZERO);
        assert_eq!(e(1).odd_part(), e(1));
    }

    #[test]
    fn even_part_recovers_spinor_from_ideal_element() {
        let psi = Multivector::scalar(0.3) + e(1) * e(2) * 0.7 + Multivector::pseudoscalar() * -0.2;
        let idem = (Multivector::ONE + e(0)) * 0.5;
        assert_eq!((psi * idem).even_part() * 2.0, psi);
    }

    #[test]
    fn commutator_with_scalar_vanishes() {
        let w = e(1) * e(2);
        assert_eq!(Multivector::commutator_half(&w, &Multivector::ONE), Multivector::ZERO);
    }

    #[test]
    fn commutator_of_spin_plane_with_e1() {
        // E^2E^1E^1 = -E^2 and E^1E^2E^1 = E^2, so ½(−E^2 − E^2) = −E^2.
        let c = Multivector::commutator_half(&Multivector::spin_plane(), &e(1));
        assert_eq!(c, -e(2));
    }

    #[test]
    fn lowering_flips_spatial_generators() {
        assert_eq!(Multivector::lower_basis_vector(0), e(0));
        assert_eq!(Multivector::lower_basis_vector(2), -e(2));
        let v = Multivector::vector_from_contravariant([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(v.contravariant(), [1.0, 2.0, 3.0, 4.0]);
        assert_eq!(v.coeffs[2], -2.0);
    }

    #[test]
    fn parse_blade_handles_order() {
        assert_eq!(Multivector::parse_blade("e21").unwrap(), Multivector::spin_plane());
        assert_eq!(Multivector::parse_blade("e12").unwrap(), -Multivector::spin_plane());
        assert_eq!(Multivector::parse_blade("1").unwrap(), Multivector::ONE);
        assert!(Multivector::parse_blade("e4").is_err());
        assert!(Multivector::parse_blade("x").is_err());
    }

    #[test]
    fn versor_inverse_of_vector() {
        let v = e(0) * 2.0 + e(1);
        let inv = v.versor_inverse().unwrap();
        let prod = v * inv;
        assert!((prod - Multivector::ONE).sup_norm() < 1e-15);
        assert!((Multivector::ONE + e(0)).versor_inverse().is_none());
    }

    #[test]
    fn display_is_readable() {
        let m = Multivector::ONE + e(1) * -2.0;
        assert_eq!(m.to_string(), "1 - 2e1");
        assert_eq!(Multivector::ZERO.to_string(), "0");
    }
}
