//! Binomial-weighted multiple-angle series
//! `Σ (n k) cos(kφ)` and `Σ (n k) sin(kφ)`.
//!
//! The closed forms `2ⁿcosⁿ(φ/2)cos(nφ/2)` and `2ⁿcosⁿ(φ/2)sin(nφ/2)` are
//! evaluated in [`closed`] and checked against independent routes: direct
//! summation with partial, Cesàro and Abel means in [`series`], and the
//! conjugate phase-pair evaluation of `(1+p)ⁿ` in [`phase`]. [`verify`] runs
//! the comparison suites behind the `trigsum` command-line tool.

mod dd;

pub mod binom;
pub mod cli;
pub mod closed;
pub mod error;
pub mod phase;
pub mod series;
pub mod verify;

pub use binom::{binom_prefix, gen_binom, BinomCoeff, ExponentN};
pub use closed::{
    cos_closed, lambda_series_closed, quarter_turn_sum, reduced_neg_int, sin_closed,
    special_value_catalog, ClosedFormValue, FormId,
};
pub use error::{Error, Result};
pub use phase::{binomial_phase_power, make_phase_pair, series_at_phase, Complex, PhasePair};
pub use series::{
    abel_sum, abel_sum_default, cesaro_sum, classify, partial_sum, Angle, ConvergenceClass, Method,
    SeriesKind, SeriesSpec, SummationResult,
};
