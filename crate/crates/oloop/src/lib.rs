//! Exact-computation and simulation workbench for the dense O(1) loop model
//! (osculating random walks) on a semi-infinite and infinite cylinder.
//!
//! The crate computes the stationary distribution over cylinder connectivity
//! states in exact rational arithmetic, evaluates the closed-form ASM-related
//! product formulas and Pascal-determinant identities against it, extracts the
//! asymptotic series of the zero-loop face probability at high precision, and
//! cross-checks the exact results with a seeded Monte Carlo simulator of
//! osculating walkers.
//!
//! Heavy inner loops (transfer-matrix columns, glue double sums, Monte Carlo
//! sampling, batch identity verification) run data-parallel under the
//! `parallel` feature (enabled by default) and sequentially without it; all
//! results are bit-identical in either mode.

pub mod algebra;
pub mod asymptotics;
pub mod formulas;
pub mod glue;
pub mod montecarlo;
pub mod patterns;
pub mod transfer;

pub(crate) mod par;

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, Clone, ThisError)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("walk exceeded step cap of {0} steps")]
    StepCap(u64),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Renders an exact rational as `num/den` (or just `num` when integral).
pub fn rational_string(x: &BigRational) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Lossy decimal rendering of an exact rational, for report convenience.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
