use num_complex::Complex64;

use super::multivector::Multivector;
use crate::error::Error;

/// Terms kept in the Taylor fallback for arguments whose square is not of
/// the form `α + βI`.
pub const SERIES_TERMS: usize = 24;

/// Relative size below which the stray part of `B²` is treated as zero.
const SPLIT_TOL: f64 = 1e-12;

/// Exponential of a bivector.
///
/// In four dimensions `B² = α + βI` with `I = E^0123`, `I² = −1`, and `I`
/// commutes with `B`, so `exp B = cosh w + B sinh(w)/w` with `w² = α + βI`
/// evaluated as complex numbers with `I` in the role of `i`. Anything whose
/// square has other grades goes through a scaled Taylor series with
/// [`SERIES_TERMS`] terms followed by repeated squaring.
pub fn exp_bivector(b: &Multivector) -> Result<Multivector, Error> {
    if !b.is_finite() {
        return Err(Error::SeriesNotConverged { terms: 0, residual: f64::NAN });
    }
    let sq = b.gp(b);
    let alpha = sq.coeffs[0];
    // Coefficient of I = E^0123 in B².
    let beta = sq.coeffs[15];
    let stray = sq.coeffs[1..15].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let scale = b.coeff_norm().powi(2).max(1e-300);
    if stray <= SPLIT_TOL * scale {
        return Ok(exp_split(b, Complex64::new(alpha, beta)));
    }
    exp_series(b)
}

fn exp_split(b: &Multivector, z: Complex64) -> Multivector {
    let (c, s) = if z.norm() < 1e-4 {
        // cosh √z and sinh √z / √z as power series in z.
        let c = 1.0 + z * (0.5 + z * (1.0 / 24.0 + z / 720.0));
        let s = 1.0 + z * (1.0 / 6.0 + z * (1.0 / 120.0 + z / 5040.0));
        (c, s)
    } else {
        let w = z.sqrt();
        (w.cosh(), w.sinh() / w)
    };
    let i = Multivector::pseudoscalar();
    let mut out = *b * s.re + i.gp(b) * s.im;
    out.coeffs[0] += c.re;
    out.coeffs[15] += c.im;
    out
}

fn exp_series(b: &Multivector) -> Result<Multivector, Error> {
    // Bring the argument below unit size so the truncated series converges,
    // then undo the scaling by squaring.
    let norm = b.coeff_norm();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = *b * 0.5f64.powi(squarings as i32);

    let mut sum = Multivector::ONE;
    let mut term = Multivector::ONE;
    let mut last = f64::INFINITY;
    for n in 1..=SERIES_TERMS {
        term = term.gp(&scaled) * (1.0 / n as f64);
        sum += term;
        last = term.sup_norm();
        if last <= f64::EPSILON * sum.sup_norm() {
            break;
        }
    }
    if last > 1e-15 * sum.sup_norm().max(1.0) {
        return Err(Error::SeriesNotConverged { terms: SERIES_TERMS, residual: last });
    }
    for _ in 0..squarings {
        sum = sum.gp(&sum);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize) -> Multivector {
        Multivector::basis_vector(a)
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(exp_bivector(&Multivector::ZERO).unwrap(), Multivector::ONE);
    }

    #[test]
    fn spin_plane_rotation_closed_form() {
        let theta = 0.7;
        let u = exp_bivector(&(Multivector::spin_plane() * theta)).unwrap();
        let expected = Multivector::scalar(theta.cos()) + Multivector::spin_plane() * theta.sin();
        assert!((u - expected).sup_norm() < 1e-15);
        assert!((u.reverse() * u - Multivector::ONE).sup_norm() < 1e-15);
    }

    #[test]
    fn boost_uses_hyperbolic_branch() {
        let b = e(1) * e(0) * 0.4;
        let u = exp_bivector(&b).unwrap();
        let expected = Multivector::scalar(0.4f64.cosh()) + e(1) * e(0) * 0.4f64.sinh();
        assert!((u - expected).sup_norm() < 1e-15);
    }

    #[test]
    fn spin_plane_rotor_rotates_frame_legs() {
        let (q, theta) = (1.3, 0.9);
        let half = Multivector::spin_plane() * (q * theta / 2.0);
        let left = exp_bivector(&-half).unwrap();
        let right = exp_bivector(&half).unwrap();
        let rotated = left * e(1) * right;
        let expected = e(1) * (q * theta).cos() + e(2) * (q * theta).sin();
        assert!((rotated - expected).sup_norm() < 1e-14);
    }

    #[test]
    fn non_simple_bivector() {
        // Boost plus a rotation in the orthogonal plane; B² has a pseudoscalar part.
        let b = e(1) * e(0) * 0.8 + e(2) * e(3) * 1.1;
        let u = exp_bivector(&b).unwrap();
        let v = exp_bivector(&-b).unwrap();
        assert!((u * v - Multivector::ONE).sup_norm() < 1e-13);
        // The two planes commute, so the exponential factorises.
        let split = exp_bivector(&(e(1) * e(0) * 0.8)).unwrap() * exp_bivector(&(e(2) * e(3) * 1.1)).unwrap();
        assert!((u - split).sup_norm() < 1e-13);
    }

    #[test]
    fn closed_form_matches_series() {
        let bs = [
            e(1) * e(0) * 0.8 + e(2) * e(3) * 1.1,
            e(0) * e(3) * -0.3 + e(1) * e(2) * 2.5 + e(2) * e(0) * 0.7,
            e(1) * e(3) * 1e-3 + e(0) * e(2) * 2e-3,
            e(1) * e(0) * 3.0,
        ];
        for b in bs {
            let closed = exp_bivector(&b).unwrap();
            let series = exp_series(&b).unwrap();
            assert!((closed - series).sup_norm() < 1e-13 * series.sup_norm().max(1.0), "{b}");
            assert!((closed.reverse().gp(&closed) - Multivector::ONE).sup_norm() < 1e-13);
        }
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let b = e(1) * e(0) * f64::NAN;
        assert!(matches!(exp_bivector(&b), Err(Error::SeriesNotConverged { .. })));
    }
}
