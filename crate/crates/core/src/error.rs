use thiserror::Error;

use crate::model::ScenarioError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PldError {
    #[error("the true meaning can never be the decoding-error flag")]
    NullPlaintext,
    #[error("codeword {index} outside codebook of size {size}")]
    CodewordOutOfRange { index: u64, size: u128 },
    #[error("key {key} outside key space 1..{size}")]
    InvalidKey { key: u64, size: u128 },
    #[error("codebook size {0} outside [2, 2^64]")]
    InvalidCodebook(u128),
    #[error("{name} = {value} is not a probability")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("SNR must be positive and finite, got {0}")]
    NonPositiveSnr(f64),
    #[error("invalid code: {info_bits} information bits over blocklength {blocklength}")]
    InvalidCode { blocklength: u32, info_bits: u32 },
    #[error("receiver strategy ({0}, {1}, {2}) is not on the probability simplex")]
    InvalidStrategy(f64, f64, f64),
    #[error("distortion constants must satisfy d_conf > d_loss > 0 (got d_loss={d_loss}, d_conf={d_conf})")]
    InvalidDistortion { d_loss: f64, d_conf: f64 },
    #[error("codebook size {size} exceeds the enumeration cap {cap}")]
    EnumerationCap { size: u128, cap: u128 },
    #[error("Monte Carlo estimate needs at least one trial")]
    ZeroTrials,
    #[error("distortion budget must be positive and finite, got {0}")]
    InvalidBudget(f64),
    #[error("bad SNR range: {0}")]
    InvalidRange(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

pub type Result<T> = std::result::Result<T, PldError>;
