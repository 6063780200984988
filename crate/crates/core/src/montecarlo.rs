//! End-to-end simulation of the dual-channel pipeline.
//!
//! Each trial draws a meaning, a key, passes ciphertext and key through
//! their channels and applies the (stochastic) decryptor. Estimates use
//! ChaCha8 streams: worker `i` of a run seeded with `seed` draws from stream
//! `i` of `ChaCha8Rng::seed_from_u64(seed)`, handles a fixed contiguous share
//! of the trials, and the per-worker moments are merged in worker order.
//! A given `(seed, trials, workers)` therefore reproduces bit for bit; the
//! single-worker estimate is the reference.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channels::{check_probability, erase, erase_key, TransportChannel};
use crate::crypto::{sample_key, uniform_codeword, ShiftCipher};
use crate::distortion::{ReceiverOption, ReceiverStrategy};
use crate::error::{PldError, Result};
use crate::model::{distance, CodebookSize, Codeword, KeyValue, Scenario};

/// Every symbol of one simulated transmission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub meaning: Codeword,
    pub key: KeyValue,
    pub ciphertext: Codeword,
    pub received: Codeword,
    pub received_key: KeyValue,
    /// Option drawn by the receiver; only when no key was decoded and the
    /// message arrived.
    pub option: Option<ReceiverOption>,
    pub estimate: Codeword,
    pub distortion: f64,
}

pub fn simulate_trial_record<R: Rng + ?Sized>(
    rng: &mut R,
    scenario: &Scenario,
    channel: &TransportChannel,
    strategy: &ReceiverStrategy,
) -> TrialRecord {
    let codebook = scenario.codebook();
    let cipher = ShiftCipher::new(codebook);
    let meaning = Codeword::Word(uniform_codeword(rng, codebook));
    let key = sample_key(rng, scenario);
    let ciphertext = cipher.encrypt(meaning, key).expect("sampled symbols are in range");
    let received = erase(rng, ciphertext, channel.eps_primary);
    let received_key = erase_key(rng, key, channel.eps_secondary);

    let (option, estimate) = match (received, received_key) {
        (Codeword::Null, _) => (None, Codeword::Null),
        (s_hat, KeyValue::Key(_)) => (None, cipher.decrypt(s_hat, received_key).expect("in range")),
        (s_hat, KeyValue::Null) => {
            let option = draw_option(rng, strategy);
            let estimate = match option {
                ReceiverOption::Perception => s_hat,
                ReceiverOption::Dropping => Codeword::Null,
                ReceiverOption::Exclusion => exclude(rng, codebook, s_hat),
            };
            (Some(option), estimate)
        }
    };
    let distortion = distance(meaning, estimate, &scenario.distortion).expect("meaning is a valid codeword");
    TrialRecord {
        meaning,
        key,
        ciphertext,
        received,
        received_key,
        option,
        estimate,
        distortion,
    }
}

/// Realized distortion of one simulated transmission.
pub fn simulate_trial<R: Rng + ?Sized>(
    rng: &mut R,
    scenario: &Scenario,
    channel: &TransportChannel,
    strategy: &ReceiverStrategy,
) -> f64 {
    simulate_trial_record(rng, scenario, channel, strategy).distortion
}

fn draw_option<R: Rng + ?Sized>(rng: &mut R, strategy: &ReceiverStrategy) -> ReceiverOption {
    let [b1, b2, _] = strategy.weights();
    let u = rng.random::<f64>();
    if u < b1 {
        ReceiverOption::Perception
    } else if u < b1 + b2 {
        ReceiverOption::Dropping
    } else {
        ReceiverOption::Exclusion
    }
}

/// Uniform pick among the codewords other than `s_hat`.
fn exclude<R: Rng + ?Sized>(rng: &mut R, codebook: CodebookSize, s_hat: Codeword) -> Codeword {
    let Codeword::Word(received) = s_hat else {
        return Codeword::Null;
    };
    let pick = rng.random_range(0..(codebook.key_count() as u64));
    Codeword::Word(if pick < received { pick } else { pick + 1 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√trials`.
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Welford accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count as f64 * other.count as f64 / count as f64);
        Moments { count, mean, m2 }
    }
}

fn check_inputs(channel: &TransportChannel, trials: u64, workers: usize) -> Result<()> {
    if trials == 0 || workers == 0 {
        return Err(PldError::ZeroTrials);
    }
    check_probability("eps_primary", channel.eps_primary)?;
    check_probability("eps_secondary", channel.eps_secondary)
}

/// Single-worker reference estimate.
pub fn estimate_distortion(
    scenario: &Scenario,
    channel: &TransportChannel,
    strategy: &ReceiverStrategy,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    estimate_distortion_parallel(scenario, channel, strategy, trials, seed, 1)
}

pub fn estimate_distortion_parallel(
    scenario: &Scenario,
    channel: &TransportChannel,
    strategy: &ReceiverStrategy,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    check_inputs(channel, trials, workers)?;
    let workers = workers as u64;
    let per_worker = trials / workers;
    let remainder = trials % workers;
    let partials: Vec<Moments> = (0..workers)
        .into_par_iter()
        .map(|worker| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(worker);
            let share = per_worker + u64::from(worker < remainder);
            let mut moments = Moments::default();
            for _ in 0..share {
                moments.push(simulate_trial(&mut rng, scenario, channel, strategy));
            }
            moments
        })
        .collect();
    let total = partials.into_iter().fold(Moments::default(), Moments::merge);
    let variance = if total.count > 1 {
        total.m2 / (total.count - 1) as f64
    } else {
        0.0
    };
    Ok(McEstimate {
        mean: total.mean,
        std_error: (variance / total.count as f64).sqrt(),
        trials,
        seed,
    })
}
