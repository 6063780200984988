//! The two transport channels: an erasure channel for the message and a
//! Z-channel for the key. Both operate on whole symbols and never confuse
//! one valid symbol for another.

use rand::Rng;

use crate::error::{PldError, Result};
use crate::fbl::{db_to_linear, packet_error_rate, FblCode};
use crate::model::{Codeword, KeyValue};

/// Failure probabilities `(εᵖ, εˢ)` of the primary and secondary channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportChannel {
    pub eps_primary: f64,
    pub eps_secondary: f64,
}

impl TransportChannel {
    pub fn new(eps_primary: f64, eps_secondary: f64) -> Result<Self> {
        check_probability("eps_primary", eps_primary)?;
        check_probability("eps_secondary", eps_secondary)?;
        Ok(Self { eps_primary, eps_secondary })
    }

    /// Both channels carried by the same code at one SNR.
    pub fn from_snr_db(snr_db: f64, code: FblCode) -> Result<Self> {
        Self::from_snr_pair_db(snr_db, snr_db, code)
    }

    /// Independent SNRs for the message and key paths.
    pub fn from_snr_pair_db(primary_db: f64, secondary_db: f64, code: FblCode) -> Result<Self> {
        Self::new(
            packet_error_rate(db_to_linear(primary_db), code)?,
            packet_error_rate(db_to_linear(secondary_db), code)?,
        )
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(PldError::InvalidProbability { name, value })
    }
}

/// `cᵖ(ŝ | s)`.
pub fn primary_pmf(s_hat: Codeword, s: Codeword, eps_p: f64) -> Result<f64> {
    if s.is_null() {
        return Err(PldError::NullPlaintext);
    }
    check_probability("eps_primary", eps_p)?;
    Ok(match s_hat {
        Codeword::Null => eps_p,
        other if other == s => 1.0 - eps_p,
        _ => 0.0,
    })
}

/// `cˢ(k̂ | k)`.
pub fn secondary_pmf(k_hat: KeyValue, k: KeyValue, eps_s: f64) -> Result<f64> {
    check_probability("eps_secondary", eps_s)?;
    Ok(match (k, k_hat) {
        (KeyValue::Null, KeyValue::Null) => 1.0,
        (KeyValue::Null, KeyValue::Key(_)) => 0.0,
        (KeyValue::Key(_), KeyValue::Null) => eps_s,
        (KeyValue::Key(a), KeyValue::Key(b)) => {
            if a == b {
                1.0 - eps_s
            } else {
                0.0
            }
        }
    })
}

pub fn sample_primary<R: Rng + ?Sized>(rng: &mut R, s: Codeword, eps_p: f64) -> Result<Codeword> {
    if s.is_null() {
        return Err(PldError::NullPlaintext);
    }
    check_probability("eps_primary", eps_p)?;
    Ok(erase(rng, s, eps_p))
}

pub fn sample_secondary<R: Rng + ?Sized>(rng: &mut R, k: KeyValue, eps_s: f64) -> Result<KeyValue> {
    check_probability("eps_secondary", eps_s)?;
    Ok(erase_key(rng, k, eps_s))
}

// Unchecked samplers for the Monte Carlo inner loop.
#[inline]
pub(crate) fn erase<R: Rng + ?Sized>(rng: &mut R, s: Codeword, eps_p: f64) -> Codeword {
    if rng.random::<f64>() < eps_p {
        Codeword::Null
    } else {
        s
    }
}

#[inline]
pub(crate) fn erase_key<R: Rng + ?Sized>(rng: &mut R, k: KeyValue, eps_s: f64) -> KeyValue {
    match k {
        KeyValue::Null => KeyValue::Null,
        key => {
            if rng.random::<f64>() < eps_s {
                KeyValue::Null
            } else {
                key
            }
        }
    }
}
