use thiserror::Error;

/// Errors raised by the algebra, spinor and field layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("signature ({p}, {q}) has more than 8 generators")]
    SignatureTooLarge { p: u8, q: u8 },

    #[error("cannot parse blade name `{0}`")]
    BadBlade(String),

    #[error("exponential series did not converge after {terms} terms (last term {residual:e})")]
    SeriesNotConverged { terms: usize, residual: f64 },

    #[error("element is not in the minimal left ideal (deviation {deviation:e})")]
    NotInIdeal { deviation: f64 },

    #[error("extracted even element does not reproduce the ideal element (deviation {deviation:e})")]
    InconsistentParity { deviation: f64 },

    #[error("expected an even element, odd part has size {odd:e}")]
    NotEven { odd: f64 },

    #[error("connection coefficients are not antisymmetric in their last two indices: |Γ_{a}{b}{c} + Γ_{a}{c}{b}| = {deviation:e}")]
    NotAntisymmetric { a: usize, b: usize, c: usize, deviation: f64 },

    #[error("curve leaves the chart at t = {t}")]
    CurveOutOfChart { t: f64 },

    #[error("field is not a rotor: |ũu − 1| = {deviation:e}")]
    NotRotor { deviation: f64 },

    #[error("cannot multiply a {left} section by a {right} section")]
    KindMismatch { left: &'static str, right: &'static str },

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("invalid field expression: {0}")]
    InvalidField(String),

    #[error("{0}")]
    Invalid(String),
}
