//! Closed-form semantic distortion for synchronized, mismatched and
//! transmitted keys, and for the opportunistic receiver that mixes the
//! perception, dropping and exclusion options when no key is decoded.
//!
//! [`enumeration`] evaluates the same quantities by brute-force summation
//! over the channel and cipher pmfs and serves as the oracle for this module.

pub mod enumeration;

pub use enumeration::{decryptor_pmf, enumeration_oracle, key_pair_distortion_enumerated, ENUMERATION_CAP};

use crate::channels::{check_probability, TransportChannel};
use crate::error::{PldError, Result};
use crate::model::{KeyValue, Scenario};

const SIMPLEX_TOL: f64 = 1e-12;

/// The receiver's three options after failing to decode a key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReceiverOption {
    /// Treat the ciphertext as plaintext.
    Perception,
    /// Discard the message.
    Dropping,
    /// Rule out the received codeword and guess among the rest.
    Exclusion,
}

impl ReceiverOption {
    pub const ALL: [ReceiverOption; 3] = [Self::Perception, Self::Dropping, Self::Exclusion];

    pub fn name(self) -> &'static str {
        match self {
            Self::Perception => "perception",
            Self::Dropping => "dropping",
            Self::Exclusion => "exclusion",
        }
    }
}

/// Mixing weights `(β₁, β₂, β₃)` over the three options.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverStrategy {
    weights: [f64; 3],
}

impl ReceiverStrategy {
    pub const PERCEPTION: Self = Self { weights: [1.0, 0.0, 0.0] };
    pub const DROPPING: Self = Self { weights: [0.0, 1.0, 0.0] };
    pub const EXCLUSION: Self = Self { weights: [0.0, 0.0, 1.0] };

    pub fn new(perception: f64, dropping: f64, exclusion: f64) -> Result<Self> {
        let weights = [perception, dropping, exclusion];
        let on_simplex = weights.iter().all(|b| (0.0..=1.0).contains(b))
            && (weights.iter().sum::<f64>() - 1.0).abs() <= SIMPLEX_TOL;
        if on_simplex {
            Ok(Self { weights })
        } else {
            Err(PldError::InvalidStrategy(perception, dropping, exclusion))
        }
    }

    pub fn uniform() -> Self {
        Self { weights: [1.0 / 3.0; 3] }
    }

    pub fn pure(option: ReceiverOption) -> Self {
        match option {
            ReceiverOption::Perception => Self::PERCEPTION,
            ReceiverOption::Dropping => Self::DROPPING,
            ReceiverOption::Exclusion => Self::EXCLUSION,
        }
    }

    pub fn weight(&self, option: ReceiverOption) -> f64 {
        self.weights[option as usize]
    }

    pub fn weights(&self) -> [f64; 3] {
        self.weights
    }
}

/// Conditional distortion contributions `(Δ₁, Δ₂, Δ₃)` of the three
/// options, given that the message arrived but no key was decoded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaTerms {
    pub perception: f64,
    pub dropping: f64,
    pub exclusion: f64,
}

impl DeltaTerms {
    pub fn get(&self, option: ReceiverOption) -> f64 {
        match option {
            ReceiverOption::Perception => self.perception,
            ReceiverOption::Dropping => self.dropping,
            ReceiverOption::Exclusion => self.exclusion,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.perception, self.dropping, self.exclusion]
    }

    pub fn weighted(&self, strategy: &ReceiverStrategy) -> f64 {
        ReceiverOption::ALL
            .iter()
            .map(|&o| strategy.weight(o) * self.get(o))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategyUsed {
    /// Deterministic decryptor (`f⁻¹` with the decoded key, identity on the null key).
    Deterministic,
    Opportunistic(ReceiverStrategy),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionReport {
    pub total: f64,
    pub loss_part: f64,
    pub confusion_part: f64,
    pub strategy_used: StrategyUsed,
}

/// Mean distortion when both sides share key `k`: `εᵖ·D_loss` for any key.
pub fn distortion_synchronized_key(scenario: &Scenario, eps_p: f64, k: KeyValue) -> Result<f64> {
    distortion_mismatched_key(scenario, eps_p, k, k)
}

/// Mean distortion when the transmitter used `k` and the receiver decrypts
/// with `k_hat`. With the shift cipher every mismatch yields a wrong valid
/// codeword.
pub fn distortion_mismatched_key(scenario: &Scenario, eps_p: f64, k: KeyValue, k_hat: KeyValue) -> Result<f64> {
    check_probability("eps_primary", eps_p)?;
    let codebook = scenario.codebook();
    codebook.check_key(k)?;
    codebook.check_key(k_hat)?;
    let model = &scenario.distortion;
    let loss = eps_p * model.d_loss;
    Ok(if k == k_hat {
        loss
    } else {
        loss + (1.0 - eps_p) * model.d_conf
    })
}

/// `D = εᵖ·D_loss + α(1 − εᵖ)εˢ·D_conf` of the deterministic decryptor.
pub fn deterministic_pipeline_distortion(scenario: &Scenario, channel: &TransportChannel) -> DistortionReport {
    let TransportChannel { eps_primary: ep, eps_secondary: es } = *channel;
    let model = &scenario.distortion;
    let loss_part = ep * model.d_loss;
    let confusion_part = scenario.alpha * (1.0 - ep) * es * model.d_conf;
    DistortionReport {
        total: loss_part + confusion_part,
        loss_part,
        confusion_part,
        strategy_used: StrategyUsed::Deterministic,
    }
}

pub fn delta_terms(scenario: &Scenario, eps_s: f64) -> DeltaTerms {
    let alpha = scenario.alpha;
    let model = &scenario.distortion;
    let miss = scenario.codebook().exclusion_miss_ratio();
    DeltaTerms {
        perception: eps_s * alpha * model.d_conf,
        dropping: (eps_s * alpha + (1.0 - alpha)) * model.d_loss,
        exclusion: (eps_s * alpha * miss + (1.0 - alpha)) * model.d_conf,
    }
}

/// `D̃ = εᵖ·D_loss + (1 − εᵖ)(β₁Δ₁ + β₂Δ₂ + β₃Δ₃)`.
pub fn opportunistic_distortion(
    scenario: &Scenario,
    channel: &TransportChannel,
    strategy: &ReceiverStrategy,
) -> DistortionReport {
    let ep = channel.eps_primary;
    let deltas = delta_terms(scenario, channel.eps_secondary);
    let [b1, b2, b3] = strategy.weights();
    let loss_part = ep * scenario.distortion.d_loss + (1.0 - ep) * b2 * deltas.dropping;
    let confusion_part = (1.0 - ep) * (b1 * deltas.perception + b3 * deltas.exclusion);
    DistortionReport {
        total: loss_part + confusion_part,
        loss_part,
        confusion_part,
        strategy_used: StrategyUsed::Opportunistic(*strategy),
    }
}
