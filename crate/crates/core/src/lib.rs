//! Error-exponent tradeoffs for universal erasure and list decoding over
//! compound discrete memoryless channels.
//!
//! The library has three layers:
//!
//! - **Theory**: sphere-packing and modified random-coding exponents
//!   ([`exponents`]), monotone weighting functions and the Neyman-Pearson
//!   optimal decoder designs built from them ([`weighting`]), a relative
//!   minimax variant ([`relative`]), and closed forms for the binary
//!   symmetric channel ([`bsc`]).
//! - **Oracles**: finite-blocklength brute-force evaluation over conditional
//!   types ([`exponents::oracle`]) used to validate the optimizers.
//! - **Simulation**: constant-composition random codebooks and the weighted
//!   empirical-mutual-information erasure/list decoder, with Monte Carlo
//!   estimation of erasure, undetected-error, and incorrect-list statistics
//!   ([`sim`]).
//!
//! All information quantities are in bits (base-2 logarithms) throughout.
//! Thresholds quoted on the natural-log scale can be converted with
//! `t_bits = t_nats / ln 2`.

pub mod bsc;
pub mod exponents;
pub mod numeric;
pub mod prob;
pub mod relative;
pub mod sim;
pub mod weighting;

pub use exponents::CompoundClass;
pub use prob::{Channel, Composition, JointType, Pmf};
pub use weighting::{ProblemSpec, WeightFn};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A probability vector or channel matrix failed validation.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Operands have incompatible alphabet sizes or lengths.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Enumerating conditional types would exceed the explosion guard.
    #[error("conditional-type enumeration of {count} matrices exceeds guard of {limit}")]
    EnumerationGuard { count: u128, limit: u128 },
    /// Codebook size exceeds the guard.
    #[error("codebook of {m} codewords exceeds guard of {limit}")]
    CodebookGuard { m: u64, limit: u64 },
    /// An iterative routine failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// A requested exponent slack is outside the attainable window.
    #[error("delta {delta} outside attainable range [{lo}, {hi}]")]
    DeltaOutOfRange { delta: f64, lo: f64, hi: f64 },
    /// No conjugate-rate pair exists with the requested gap.
    #[error("no conjugate-rate pair with gap {0}")]
    UnattainableGap(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
