use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::blade::{spacetime_blades, BladeIndex, SPACETIME_TABLE};
use super::multivector::{Multivector, BLADES};

/// Element of the complexified algebra `ℂ ⊗ R_{1,3}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CMultivector {
    pub coeffs: [Complex64; BLADES],
}

impl Default for CMultivector {
    fn default() -> Self {
        Self::ZERO
    }
}

const CZERO: Complex64 = Complex64::new(0.0, 0.0);

impl CMultivector {
    pub const ZERO: CMultivector = CMultivector { coeffs: [CZERO; BLADES] };

    pub fn one() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    /// The imaginary unit `i` as an algebra element.
    pub fn imaginary_unit() -> Self {
        Self::scalar(Complex64::new(0.0, 1.0))
    }

    pub fn scalar(s: Complex64) -> Self {
        let mut c = Self::ZERO;
        c.coeffs[0] = s;
        c
    }

    pub fn from_parts(re: &Multivector, im: &Multivector) -> Self {
        CMultivector {
            coeffs: std::array::from_fn(|k| Complex64::new(re.coeffs[k], im.coeffs[k])),
        }
    }

    pub fn real_part(&self) -> Multivector {
        Multivector::new(std::array::from_fn(|k| self.coeffs[k].re))
    }

    pub fn imag_part(&self) -> Multivector {
        Multivector::new(std::array::from_fn(|k| self.coeffs[k].im))
    }

    pub fn get(&self, blade: BladeIndex) -> Complex64 {
        self.coeffs[blade.index()]
    }

    pub fn gp(&self, rhs: &Self) -> Self {
        let mut out = [CZERO; BLADES];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == CZERO {
                continue;
            }
            let signs = &SPACETIME_TABLE.sign[i];
            let targets = &SPACETIME_TABLE.target[i];
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[targets[j] as usize] += a * b * signs[j];
            }
        }
        CMultivector { coeffs: out }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMultivector { coeffs: self.coeffs.map(|c| c * s) }
    }

    pub fn even_part(&self) -> Self {
        let mut out = *self;
        for b in spacetime_blades() {
            if b.grade() % 2 == 1 {
                out.coeffs[b.index()] = CZERO;
            }
        }
        out
    }

    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| {
            let n = c.norm();
            if n.is_nan() {
                f64::INFINITY
            } else {
                m.max(n)
            }
        })
    }
}

/// Embeds a real multivector with zero imaginary part.
pub fn complexify(a: &Multivector) -> CMultivector {
    CMultivector::from_parts(a, &Multivector::ZERO)
}

impl From<Multivector> for CMultivector {
    fn from(a: Multivector) -> Self {
        complexify(&a)
    }
}

impl Add for CMultivector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        CMultivector { coeffs: std::array::from_fn(|k| self.coeffs[k] + rhs.coeffs[k]) }
    }
}

impl Sub for CMultivector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        CMultivector { coeffs: std::array::from_fn(|k| self.coeffs[k] - rhs.coeffs[k]) }
    }
}

impl Neg for CMultivector {
    type Output = Self;
    fn neg(self) -> Self {
        CMultivector { coeffs: self.coeffs.map(|c| -c) }
    }
}

impl Mul for CMultivector {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.gp(&rhs)
    }
}

impl Mul<Complex64> for CMultivector {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for CMultivector {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexify_one_and_round_trip() {
        assert_eq!(complexify(&Multivector::ONE), CMultivector::one());
        let a = Multivector::basis_vector(1) * 2.0 + Multivector::ONE;
        assert_eq!(complexify(&a).real_part(), a);
        assert_eq!(complexify(&a).imag_part(), Multivector::ZERO);
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = CMultivector::imaginary_unit();
        assert_eq!(i * i, -CMultivector::one());
    }

    #[test]
    fn complexified_idempotent_is_idempotent() {
        let e = complexify(&((Multivector::ONE + Multivector::basis_vector(0)) * 0.5));
        let half_plane =
            (CMultivector::one() + CMultivector::imaginary_unit() * complexify(&Multivector::spin_plane())) * 0.5;
        let f = e * half_plane;
        assert!((f * f - f).sup_norm() < 1e-15);
    }
}
