//! Arithmetic in the spacetime algebra `R_{1,3}` and its complexification.

mod blade;
mod complex;
mod exp;
mod multivector;

pub use blade::{blade_mul, spacetime_blades, BladeIndex, Signature};
pub use complex::{complexify, CMultivector};
pub use exp::{exp_bivector, SERIES_TERMS};
pub use multivector::{Multivector, BLADES};

/// Metric `η^{ab}` of the spacetime signature.
pub fn eta(a: usize, b: usize) -> f64 {
    Signature::SPACETIME.eta(a, b)
}
