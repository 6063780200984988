//! Brute-force evaluation of the dual-channel distortion sums.
//!
//! Sums `p(k)p(w)u_k(s|w)cᵖ(ŝ|s)cˢ(k̂|k)ṽ_k̂(ŵ|ŝ)d(w,ŵ)` over every symbol of
//! the extended alphabets, using only the channel pmfs, the cipher and the
//! stochastic decryptor pmf. Zero-probability branches are skipped, which
//! keeps the cost at `O(S³)`.

use crate::channels::{check_probability, primary_pmf, secondary_pmf, TransportChannel};
use crate::crypto::ShiftCipher;
use crate::distortion::{ReceiverOption, ReceiverStrategy};
use crate::error::{PldError, Result};
use crate::model::{distance, CodebookSize, Codeword, KeyValue, Scenario};

pub const ENUMERATION_CAP: u128 = 4096;

fn check_cap(codebook: CodebookSize) -> Result<u64> {
    if codebook.get() > ENUMERATION_CAP {
        return Err(PldError::EnumerationCap {
            size: codebook.get(),
            cap: ENUMERATION_CAP,
        });
    }
    Ok(codebook.get() as u64)
}

fn extended_codewords(size: u64) -> impl Iterator<Item = Codeword> {
    (0..size).map(Codeword::Word).chain(std::iter::once(Codeword::Null))
}

fn extended_keys(size: u64) -> impl Iterator<Item = KeyValue> {
    std::iter::once(KeyValue::Null).chain((1..size).map(KeyValue::Key))
}

/// Stochastic decryptor `ṽ_k̂(ŵ | ŝ)`.
///
/// A decoded key decrypts deterministically. Without a key the receiver
/// perceives (`ŵ = ŝ`), drops (`ŵ = NULL`) or excludes (uniform on the
/// codewords other than `ŝ`) with weights `β`. An erased message stays
/// erased under every option.
pub fn decryptor_pmf(
    cipher: &ShiftCipher,
    w_hat: Codeword,
    s_hat: Codeword,
    k_hat: KeyValue,
    strategy: &ReceiverStrategy,
) -> Result<f64> {
    if s_hat.is_null() {
        return Ok(if w_hat.is_null() { 1.0 } else { 0.0 });
    }
    if let KeyValue::Key(_) = k_hat {
        let target = cipher.decrypt(s_hat, k_hat)?;
        return Ok(if w_hat == target { 1.0 } else { 0.0 });
    }
    let others = cipher.codebook().key_count() as f64;
    Ok(match w_hat {
        Codeword::Null => strategy.weight(ReceiverOption::Dropping),
        w if w == s_hat => strategy.weight(ReceiverOption::Perception),
        _ => strategy.weight(ReceiverOption::Exclusion) / others,
    })
}

/// `D̃` by exhaustive summation over `(k, w, ŝ, k̂, ŵ)`.
pub fn enumeration_oracle(
    scenario: &Scenario,
    channel: &TransportChannel,
    strategy: &ReceiverStrategy,
) -> Result<f64> {
    let codebook = scenario.codebook();
    let size = check_cap(codebook)?;
    check_probability("eps_primary", channel.eps_primary)?;
    check_probability("eps_secondary", channel.eps_secondary)?;
    let cipher = ShiftCipher::new(codebook);
    let p_w = 1.0 / size as f64;
    let key_prob = |k: KeyValue| match k {
        KeyValue::Null => 1.0 - scenario.alpha,
        KeyValue::Key(_) => scenario.alpha / (size - 1) as f64,
    };

    let mut total = 0.0;
    for k in extended_keys(size) {
        let p_k = key_prob(k);
        for w in (0..size).map(Codeword::Word) {
            let s = cipher.encrypt(w, k)?;
            for s_hat in extended_codewords(size) {
                let c_p = primary_pmf(s_hat, s, channel.eps_primary)?;
                if c_p == 0.0 {
                    continue;
                }
                for k_hat in extended_keys(size) {
                    let c_s = secondary_pmf(k_hat, k, channel.eps_secondary)?;
                    if c_s == 0.0 {
                        continue;
                    }
                    for w_hat in extended_codewords(size) {
                        let v = decryptor_pmf(&cipher, w_hat, s_hat, k_hat, strategy)?;
                        if v == 0.0 {
                            continue;
                        }
                        total += p_k * p_w * c_p * c_s * v * distance(w, w_hat, &scenario.distortion)?;
                    }
                }
            }
        }
    }
    Ok(total)
}

/// `D_{k,k̂}` by summation over `(w, ŝ)` with the deterministic decryptor.
pub fn key_pair_distortion_enumerated(scenario: &Scenario, eps_p: f64, k: KeyValue, k_hat: KeyValue) -> Result<f64> {
    let codebook = scenario.codebook();
    let size = check_cap(codebook)?;
    let cipher = ShiftCipher::new(codebook);
    let mut total = 0.0;
    for w in (0..size).map(Codeword::Word) {
        let s = cipher.encrypt(w, k)?;
        for s_hat in extended_codewords(size) {
            let c_p = primary_pmf(s_hat, s, eps_p)?;
            if c_p == 0.0 {
                continue;
            }
            let w_hat = cipher.decrypt(s_hat, k_hat)?;
            total += c_p * distance(w, w_hat, &scenario.distortion)? / size as f64;
        }
    }
    Ok(total)
}
