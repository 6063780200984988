//! Finite-blocklength packet error model for the AWGN channel.
//!
//! The error rate uses the normal approximation without the `log₂(n)/2`
//! correction. The blocklength counts real signal dimensions (one coded bit
//! per dimension), so capacity and dispersion enter per real dimension, i.e.
//! at half the complex-baseband values returned by [`shannon_capacity`] and
//! [`channel_dispersion`].

use std::f64::consts::{LOG2_E, SQRT_2};

use crate::error::{PldError, Result};

/// Lower clamp of the packet error rate.
pub const EPS_MIN: f64 = 1e-300;
/// Upper clamp of the packet error rate: the largest double below one.
pub const EPS_MAX: f64 = 1.0 - f64::EPSILON / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FblCode {
    blocklength: u32,
    info_bits: u32,
}

impl FblCode {
    pub fn new(blocklength: u32, info_bits: u32) -> Result<Self> {
        if blocklength == 0 || info_bits == 0 || info_bits > blocklength {
            return Err(PldError::InvalidCode { blocklength, info_bits });
        }
        Ok(Self { blocklength, info_bits })
    }

    pub fn blocklength(&self) -> u32 {
        self.blocklength
    }

    pub fn info_bits(&self) -> u32 {
        self.info_bits
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn check_snr(snr: f64) -> Result<()> {
    if snr > 0.0 && snr.is_finite() {
        Ok(())
    } else {
        Err(PldError::NonPositiveSnr(snr))
    }
}

/// `log₂(1 + γ)` in bits per complex channel use.
pub fn shannon_capacity(snr_linear: f64) -> Result<f64> {
    check_snr(snr_linear)?;
    Ok(if snr_linear < 0.5 {
        snr_linear.ln_1p() * LOG2_E
    } else {
        (1.0 + snr_linear).log2()
    })
}

/// `(1 − (1 + γ)⁻²)·(log₂ e)²` in bits² per complex channel use.
pub fn channel_dispersion(snr_linear: f64) -> Result<f64> {
    check_snr(snr_linear)?;
    let one_minus = -(-2.0 * snr_linear.ln_1p()).exp_m1();
    Ok(one_minus * LOG2_E * LOG2_E)
}

/// Gaussian tail `Q(x) = ½·erfc(x/√2)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Packet error probability of a `(n, k)` code at the given SNR, clamped to
/// `[EPS_MIN, EPS_MAX]`.
pub fn packet_error_rate(snr_linear: f64, code: FblCode) -> Result<f64> {
    let capacity = 0.5 * shannon_capacity(snr_linear)?;
    let dispersion = 0.5 * channel_dispersion(snr_linear)?;
    let n = f64::from(code.blocklength);
    let k = f64::from(code.info_bits);
    let arg = (n * capacity - k) / (n * dispersion).sqrt();
    Ok(q_function(arg).clamp(EPS_MIN, EPS_MAX))
}

pub fn packet_error_rate_db(snr_db: f64, code: FblCode) -> Result<f64> {
    packet_error_rate(db_to_linear(snr_db), code)
}
