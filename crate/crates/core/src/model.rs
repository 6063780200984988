//! Codewords, keys, the two-level semantic distortion measure and the
//! scenario parameter set shared by every other module.
//!
//! The codebook is identified with the residues `0..S`. Valid keys are the
//! nonzero residues `1..S`, so that a keyed encryption never maps a codeword
//! onto itself. Both alphabets are extended with an out-of-band null symbol:
//! [`Codeword::Null`] is the decoding-error flag, [`KeyValue::Null`] stands
//! for "no key" (the litter sequence on the transmit side, a failed key
//! decode on the receive side).

use std::fmt;

use thiserror::Error;

use crate::error::{PldError, Result};
use crate::fbl::FblCode;

/// Largest supported codebook cardinality, `2^64`.
pub const MAX_CODEBOOK: u128 = 1 << 64;

/// A symbol of the extended codebook `𝕊⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Codeword {
    Word(u64),
    Null,
}

/// A symbol of the extended key space `𝕂⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KeyValue {
    Key(u64),
    Null,
}

pub const NULL_MSG: Codeword = Codeword::Null;
pub const NULL_KEY: KeyValue = KeyValue::Null;

impl Codeword {
    pub fn is_null(self) -> bool {
        matches!(self, Codeword::Null)
    }
}

impl KeyValue {
    pub fn is_null(self) -> bool {
        matches!(self, KeyValue::Null)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codeword::Word(w) => write!(f, "{w}"),
            Codeword::Null => f.write_str("NULL"),
        }
    }
}

impl fmt::Display for KeyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyValue::Key(k) => write!(f, "{k}"),
            KeyValue::Null => f.write_str("NULL"),
        }
    }
}

/// Codebook cardinality `S`, with `2 ≤ S ≤ 2^64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodebookSize(u128);

impl CodebookSize {
    pub const MAX: CodebookSize = CodebookSize(MAX_CODEBOOK);

    pub fn new(size: u128) -> Result<Self> {
        if (2..=MAX_CODEBOOK).contains(&size) {
            Ok(Self(size))
        } else {
            Err(PldError::InvalidCodebook(size))
        }
    }

    pub fn get(self) -> u128 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    /// Number of valid keys, `S − 1`.
    pub fn key_count(self) -> u128 {
        self.0 - 1
    }

    pub fn contains(self, index: u64) -> bool {
        u128::from(index) < self.0
    }

    /// `(S − 2)/(S − 1)`: chance that a uniform pick among the `S − 1`
    /// codewords other than the received ciphertext misses the plaintext.
    /// Written as `1 − 1/(S − 1)` so the `S = 2^64` case stays exact.
    pub fn exclusion_miss_ratio(self) -> f64 {
        1.0 - 1.0 / (self.0 - 1) as f64
    }

    pub fn check_codeword(self, w: Codeword) -> Result<()> {
        match w {
            Codeword::Word(index) if !self.contains(index) => Err(PldError::CodewordOutOfRange {
                index,
                size: self.0,
            }),
            _ => Ok(()),
        }
    }

    pub fn check_key(self, k: KeyValue) -> Result<()> {
        match k {
            KeyValue::Key(key) if key == 0 || !self.contains(key) => {
                Err(PldError::InvalidKey { key, size: self.0 })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CodebookSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == MAX_CODEBOOK {
            f.write_str("2^64")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Two-level distortion: `D_loss` for the erasure flag, `D_conf` for any
/// wrong valid codeword.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionModel {
    pub d_loss: f64,
    pub d_conf: f64,
}

impl DistortionModel {
    pub fn new(d_loss: f64, d_conf: f64) -> Result<Self> {
        let model = Self { d_loss, d_conf };
        if model.is_valid() {
            Ok(model)
        } else {
            Err(PldError::InvalidDistortion { d_loss, d_conf })
        }
    }

    pub fn is_valid(&self) -> bool {
        self.d_loss.is_finite() && self.d_conf.is_finite() && self.d_conf > self.d_loss && self.d_loss > 0.0
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            d_loss: self.d_loss * factor,
            d_conf: self.d_conf * factor,
        }
    }
}

/// Semantic distance `d(w, ŵ)` between the intended meaning and an estimate.
pub fn distance(w: Codeword, w_hat: Codeword, model: &DistortionModel) -> Result<f64> {
    match (w, w_hat) {
        (Codeword::Null, _) => Err(PldError::NullPlaintext),
        (_, Codeword::Null) => Ok(model.d_loss),
        (a, b) if a == b => Ok(0.0),
        _ => Ok(model.d_conf),
    }
}

/// Full parameter set of one evaluation point.
///
/// Fields are plain values so that [`Scenario::validate`] can report every
/// violated invariant at once. Downstream computations assume a validated
/// scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub codebook_size: u128,
    pub distortion: DistortionModel,
    /// Deception activation rate.
    pub alpha: f64,
    pub payload_bits: u32,
    pub code_rate: f64,
    pub snr_bob_db: f64,
    pub snr_eve_db: f64,
}

impl Default for Scenario {
    /// Small-codebook study point: `S = 2`, `D_loss = 1`, `D_conf = 10`,
    /// `α = 0.99`, 64-bit payload at rate 1/2, both SNRs at 0 dB.
    fn default() -> Self {
        Self {
            codebook_size: 2,
            distortion: DistortionModel { d_loss: 1.0, d_conf: 10.0 },
            alpha: 0.99,
            payload_bits: 64,
            code_rate: 0.5,
            snr_bob_db: 0.0,
            snr_eve_db: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    CodebookSize(u128),
    Alpha(f64),
    Distortion { d_loss: f64, d_conf: f64 },
    ZeroPayload,
    CodeRate(f64),
    NonIntegerBlocklength(f64),
    Snr { which: &'static str, value: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CodebookSize(s) => write!(f, "codebook size {s} out of [2, 2^64]"),
            Violation::Alpha(a) => write!(f, "alpha out of [0,1] (got {a})"),
            Violation::Distortion { d_loss, d_conf } => write!(
                f,
                "distortion constants must satisfy d_conf > d_loss > 0 (got d_loss={d_loss}, d_conf={d_conf})"
            ),
            Violation::ZeroPayload => f.write_str("payload_bits must be at least 1"),
            Violation::CodeRate(r) => write!(f, "code rate out of (0,1] (got {r})"),
            Violation::NonIntegerBlocklength(n) => write!(f, "non-integer blocklength {n:.2}…"),
            Violation::Snr { which, value } => write!(f, "{which} must be finite (got {value})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid scenario: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ScenarioError {
    pub violations: Vec<Violation>,
}

impl Scenario {
    /// Returns the scenario unchanged if every invariant holds, otherwise
    /// the complete list of violations.
    pub fn validate(self) -> std::result::Result<Scenario, ScenarioError> {
        let mut violations = Vec::new();
        if !(2..=MAX_CODEBOOK).contains(&self.codebook_size) {
            violations.push(Violation::CodebookSize(self.codebook_size));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            violations.push(Violation::Alpha(self.alpha));
        }
        if !self.distortion.is_valid() {
            violations.push(Violation::Distortion {
                d_loss: self.distortion.d_loss,
                d_conf: self.distortion.d_conf,
            });
        }
        if self.payload_bits == 0 {
            violations.push(Violation::ZeroPayload);
        }
        let rate_ok = self.code_rate > 0.0 && self.code_rate <= 1.0;
        if !rate_ok {
            violations.push(Violation::CodeRate(self.code_rate));
        }
        if rate_ok && self.payload_bits > 0 {
            let n = f64::from(self.payload_bits) / self.code_rate;
            if !is_integral(n) || n > f64::from(u32::MAX) {
                violations.push(Violation::NonIntegerBlocklength(n));
            }
        }
        for (which, value) in [("snr_bob_db", self.snr_bob_db), ("snr_eve_db", self.snr_eve_db)] {
            if !value.is_finite() {
                violations.push(Violation::Snr { which, value });
            }
        }
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(ScenarioError { violations })
        }
    }

    /// Codebook cardinality of a validated scenario.
    pub fn codebook(&self) -> CodebookSize {
        debug_assert!((2..=MAX_CODEBOOK).contains(&self.codebook_size));
        CodebookSize(self.codebook_size)
    }

    pub fn with_alpha(&self, alpha: f64) -> Scenario {
        Scenario { alpha, ..*self }
    }

    /// Blocklength `n = payload / rate` and payload `k` as an FBL code.
    pub fn fbl_code(&self) -> Result<FblCode> {
        let n = f64::from(self.payload_bits) / self.code_rate;
        if !(n.is_finite() && is_integral(n)) || n > f64::from(u32::MAX) {
            return Err(ScenarioError {
                violations: vec![Violation::NonIntegerBlocklength(n)],
            }
            .into());
        }
        FblCode::new(n.round() as u32, self.payload_bits)
    }
}

fn is_integral(x: f64) -> bool {
    x.is_finite() && (x - x.round()).abs() <= 1e-9 * x.abs().max(1.0)
}
