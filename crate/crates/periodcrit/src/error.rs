//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root-system label `{0}`")]
    UnsupportedLabel(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("Weyl group enumeration exceeded the safety cap of {cap} elements")]
    WeylCapExceeded { cap: usize },

    #[error("lattice enumeration exceeded the cap of {cap} points")]
    LatticeCapExceeded { cap: u64 },

    #[error("invalid symmetric-pair data: {0}")]
    InvalidPair(String),

    #[error("coset representative selection failed: {0}")]
    RepresentativeSelection(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("series terms have non-integral q-exponents; clear denominators of the exponent functional first")]
    NonIntegralExponent,
}

pub type Result<T> = std::result::Result<T, Error>;
