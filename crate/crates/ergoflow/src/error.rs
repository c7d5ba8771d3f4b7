//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid hamiltonian: {0}")]
    InvalidHamiltonian(String),

    #[error("invalid ensemble shape: {0}")]
    InvalidShape(String),

    #[error("digit {digit} at site {site} out of range for {levels} levels")]
    DigitOutOfRange {
        site: usize,
        digit: u8,
        levels: usize,
    },

    #[error("label length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("populations sum to {sum:.17e}, expected 1 within 1e-12")]
    NotNormalized { sum: f64 },

    #[error("negative population {value:.17e} at index {index}")]
    NegativePopulation { index: usize, value: f64 },

    #[error("dense dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: u128, cap: usize },

    #[error("pair positivity violated: |coherence|^2 = {coherence_sq:.17e} > {bound:.17e}")]
    PairPositivity { coherence_sq: f64, bound: f64 },

    #[error("separability certificate not applicable: pair differs at {differing} sites, need exactly 1")]
    CertificateNotApplicable { differing: usize },

    #[error("relative entropy support violation at index {index}")]
    SupportViolation { index: usize },

    #[error("target entropy {entropy:.17e} not attainable (attainable range ({min:.17e}, {max:.17e}))")]
    EntropyOutOfRange { entropy: f64, min: f64, max: f64 },

    #[error("microcanonical shell is empty")]
    EmptyShell,

    #[error("need {needed} labels below the shell, found {available}")]
    InsufficientTargets { needed: usize, available: usize },

    #[error("{0}")]
    InvalidArgument(String),
}
