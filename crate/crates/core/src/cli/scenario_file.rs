//! JSON scenario files.
//!
//! ```json
//! {
//!   "codebook_size": "2^64", "d_loss": 1.0, "d_conf": 10.0, "alpha": 0.99,
//!   "payload_bits": 64, "code_rate": 0.5, "snr_bob_db": 3.0, "snr_eve_db": 0.0,
//!   "d_max": 0.01, "mc_trials": 1000000, "seed": 7
//! }
//! ```
//!
//! Unknown keys are rejected. `d_max`, `mc_trials` and `seed` are optional.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{DistortionModel, Scenario, ScenarioError, MAX_CODEBOOK};

pub const DEFAULT_D_MAX: f64 = 0.01;
pub const DEFAULT_TRIALS: u64 = 100_000;

#[derive(Debug, Error)]
pub enum ScenarioFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed scenario file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("codebook_size must be an integer or \"2^64\", got {0:?}")]
    CodebookToken(String),
    #[error(transparent)]
    Invalid(#[from] ScenarioError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodebookToken {
    Number(u64),
    Text(String),
}

impl CodebookToken {
    pub fn cardinality(&self) -> Result<u128, ScenarioFileError> {
        match self {
            CodebookToken::Number(n) => Ok(u128::from(*n)),
            CodebookToken::Text(t) if t.trim() == "2^64" => Ok(MAX_CODEBOOK),
            CodebookToken::Text(t) => t
                .trim()
                .parse::<u128>()
                .map_err(|_| ScenarioFileError::CodebookToken(t.clone())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub codebook_size: CodebookToken,
    pub d_loss: f64,
    pub d_conf: f64,
    pub alpha: f64,
    pub payload_bits: u32,
    pub code_rate: f64,
    pub snr_bob_db: f64,
    pub snr_eve_db: f64,
    #[serde(default = "default_d_max")]
    pub d_max: f64,
    #[serde(default = "default_trials")]
    pub mc_trials: u64,
    #[serde(default)]
    pub seed: u64,
}

fn default_d_max() -> f64 {
    DEFAULT_D_MAX
}

fn default_trials() -> u64 {
    DEFAULT_TRIALS
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, ScenarioFileError> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        file.scenario()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// The validated scenario described by the file.
    pub fn scenario(&self) -> Result<Scenario, ScenarioFileError> {
        let scenario = Scenario {
            codebook_size: self.codebook_size.cardinality()?,
            distortion: DistortionModel {
                d_loss: self.d_loss,
                d_conf: self.d_conf,
            },
            alpha: self.alpha,
            payload_bits: self.payload_bits,
            code_rate: self.code_rate,
            snr_bob_db: self.snr_bob_db,
            snr_eve_db: self.snr_eve_db,
        };
        Ok(scenario.validate()?)
    }
}

impl Default for ScenarioFile {
    fn default() -> Self {
        let s = Scenario::default();
        Self {
            codebook_size: CodebookToken::Number(s.codebook_size as u64),
            d_loss: s.distortion.d_loss,
            d_conf: s.distortion.d_conf,
            alpha: s.alpha,
            payload_bits: s.payload_bits,
            code_rate: s.code_rate,
            snr_bob_db: s.snr_bob_db,
            snr_eve_db: s.snr_eve_db,
            d_max: DEFAULT_D_MAX,
            mc_trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
}
