//! Spacetime algebra kernels and a verification toolkit for Dirac-Hestenes
//! spinor fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`clifford`]: blade tables, real and complex multivectors, bivector
//!   exponentials.
//! * [`spin`]: primitive idempotents, minimal left ideals, the `ℂ(4)`
//!   representation and column spinors.
//! * [`field`]: coordinate fields with exact derivatives and the section
//!   kinds (Clifford, left spinor, right spinor).
//! * [`spacetime`]: charts, frames, connections, covariant derivatives,
//!   parallel transport and spin-frame changes.
//! * [`sample`]: seeded generators of random multivectors, fields and
//!   setups for property tests.
//! * [`dirac`]: residuals of the three forms of the Dirac equation, gauge
//!   and Lorentz transformations, bilinear covariants.
//!
//! All sections are represented by their components in one fixed global spin
//! frame; a change of spin frame is an explicit transformation of data.

pub mod clifford;
pub mod dirac;
pub mod error;
pub mod field;
pub mod sample;
pub mod spacetime;
pub mod spin;

pub use error::Error;
