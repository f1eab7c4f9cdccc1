use thiserror::Error;

/// Errors raised by the evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Fractional exponent with a non-positive base `2cos(φ/2)`.
    #[error("domain error: exponent {n} requires cos(phi/2) > 0, got phi = {phi} rad")]
    Domain { n: f64, phi: f64 },

    /// Negative exponent at an angle where `cos(φ/2)` vanishes.
    #[error("pole: exponent {n} is singular at phi = {phi} rad (cos(phi/2) = 0)")]
    Pole { n: f64, phi: f64 },

    /// The Abel means grow without bound as the radius approaches 1.
    #[error("series diverges: {0}")]
    Divergent(String),

    #[error("invalid Abel radii: {0}")]
    InvalidRadii(String),

    #[error("insufficient terms: {0}")]
    InsufficientTerms(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// Internal cancellation check failed. Points at a bug, not at bad input.
    #[error("inconsistent evaluation: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
