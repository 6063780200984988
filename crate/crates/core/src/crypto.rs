//! Deterministic deceptive cryptosystem: a modular shift over the codebook.
//!
//! `f_k(w) = (w + k) mod S` with keys `1..S`. Every ciphertext is itself a
//! valid plaintext, no keyed encryption has a fixed point, and the null key
//! acts as the identity. Decryption passes the erasure flag through
//! unchanged for any key.

use rand::Rng;

use crate::error::{PldError, Result};
use crate::model::{CodebookSize, Codeword, KeyValue, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftCipher {
    codebook: CodebookSize,
}

impl ShiftCipher {
    pub fn new(codebook: CodebookSize) -> Self {
        Self { codebook }
    }

    pub fn codebook(&self) -> CodebookSize {
        self.codebook
    }

    pub fn encrypt(&self, w: Codeword, k: KeyValue) -> Result<Codeword> {
        let Codeword::Word(index) = w else {
            return Err(PldError::NullPlaintext);
        };
        self.codebook.check_codeword(w)?;
        self.codebook.check_key(k)?;
        Ok(match k {
            KeyValue::Null => w,
            KeyValue::Key(key) => Codeword::Word(self.shift(index, u128::from(key))),
        })
    }

    pub fn decrypt(&self, s_hat: Codeword, k_hat: KeyValue) -> Result<Codeword> {
        self.codebook.check_codeword(s_hat)?;
        self.codebook.check_key(k_hat)?;
        Ok(match (s_hat, k_hat) {
            (Codeword::Null, _) => Codeword::Null,
            (word, KeyValue::Null) => word,
            (Codeword::Word(index), KeyValue::Key(key)) => {
                Codeword::Word(self.shift(index, self.codebook.get() - u128::from(key)))
            }
        })
    }

    fn shift(&self, index: u64, by: u128) -> u64 {
        // index < S ≤ 2^64 and by < S, so the sum fits in u128 and the result in u64
        ((u128::from(index) + by) % self.codebook.get()) as u64
    }
}

/// Draws the per-message key: the null key with probability `1 − α`,
/// otherwise a key uniform on `1..S`.
pub fn sample_key<R: Rng + ?Sized>(rng: &mut R, scenario: &Scenario) -> KeyValue {
    if rng.random::<f64>() < scenario.alpha {
        KeyValue::Key(uniform_key(rng, scenario.codebook()))
    } else {
        KeyValue::Null
    }
}

pub(crate) fn uniform_key<R: Rng + ?Sized>(rng: &mut R, codebook: CodebookSize) -> u64 {
    // 1..=S-1; S-1 ≤ u64::MAX
    rng.random_range(1..=(codebook.key_count() as u64))
}

pub(crate) fn uniform_codeword<R: Rng + ?Sized>(rng: &mut R, codebook: CodebookSize) -> u64 {
    rng.random_range(0..=(codebook.key_count() as u64))
}
