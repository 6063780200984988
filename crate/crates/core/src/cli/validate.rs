//! Oracle suite for one scenario: closed forms against exhaustive
//! enumeration and against Monte Carlo, plus cipher identities.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channels::TransportChannel;
use crate::crypto::{uniform_codeword, uniform_key, ShiftCipher};
use crate::distortion::{
    deterministic_pipeline_distortion, enumeration_oracle, opportunistic_distortion, ReceiverStrategy,
    ENUMERATION_CAP,
};
use crate::error::Result;
use crate::model::{Codeword, KeyValue, Scenario};
use crate::montecarlo::{estimate_distortion_parallel, McEstimate};
use crate::strategy::minimum_distortion;

/// Closed-form `D̃` under test; swapped out by negative-control fixtures.
pub type ClosedForm<'a> = &'a (dyn Fn(&Scenario, &TransportChannel, &ReceiverStrategy) -> f64 + Sync);

pub const ENUMERATION_TOL: f64 = 1e-10;
pub const REDUCTION_TOL: f64 = 1e-12;
pub const MC_SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub enum GateStatus {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateResult {
    pub name: &'static str,
    pub status: GateStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub gates: Vec<GateResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.gates.iter().all(|g| g.status != GateStatus::Fail)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for gate in &self.gates {
            match &gate.status {
                GateStatus::Pass => writeln!(f, "PASS {}: {}", gate.name, gate.detail)?,
                GateStatus::Fail => writeln!(f, "FAIL {}: {}", gate.name, gate.detail)?,
                GateStatus::Skipped(why) => writeln!(f, "SKIP {}: skipped: {why}", gate.name)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

/// Relative agreement with an absolute floor for values that are exactly zero.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()) + 1e-15
}

/// `|MC mean − exact| ≤ 4·se`, with a round-off floor for zero-variance cells.
pub fn mc_agrees(estimate: &McEstimate, exact: f64) -> bool {
    (estimate.mean - exact).abs() <= MC_SIGMAS * estimate.std_error + 1e-12 * exact.abs().max(1.0)
}

fn gate(name: &'static str, ok: bool, detail: String) -> GateResult {
    GateResult {
        name,
        status: if ok { GateStatus::Pass } else { GateStatus::Fail },
        detail,
    }
}

fn strategies() -> [(&'static str, ReceiverStrategy); 4] {
    [
        ("perception", ReceiverStrategy::PERCEPTION),
        ("dropping", ReceiverStrategy::DROPPING),
        ("exclusion", ReceiverStrategy::EXCLUSION),
        ("uniform", ReceiverStrategy::uniform()),
    ]
}

pub fn validate(scenario: &Scenario, options: &ValidationOptions) -> Result<ValidationReport> {
    let closed = |s: &Scenario, c: &TransportChannel, b: &ReceiverStrategy| opportunistic_distortion(s, c, b).total;
    validate_with(scenario, options, &closed)
}

pub fn validate_with(
    scenario: &Scenario,
    options: &ValidationOptions,
    closed_form: ClosedForm<'_>,
) -> Result<ValidationReport> {
    let code = scenario.fbl_code()?;
    let channels = [
        ("bob", TransportChannel::from_snr_db(scenario.snr_bob_db, code)?),
        ("eve", TransportChannel::from_snr_db(scenario.snr_eve_db, code)?),
    ];
    let mut gates = Vec::new();

    // closed form vs enumeration
    if scenario.codebook_size > ENUMERATION_CAP {
        gates.push(GateResult {
            name: "closed-form-vs-enumeration",
            status: GateStatus::Skipped(format!("cardinality cap (S = {} > {ENUMERATION_CAP})", scenario.codebook())),
            detail: String::new(),
        });
    } else {
        let mut worst = 0.0f64;
        let mut failures = Vec::new();
        for (who, channel) in &channels {
            for (name, strategy) in strategies() {
                let exact = enumeration_oracle(scenario, channel, &strategy)?;
                let closed = closed_form(scenario, channel, &strategy);
                let err = (exact - closed).abs() / exact.abs().max(closed.abs()).max(f64::MIN_POSITIVE);
                if !rel_close(exact, closed, ENUMERATION_TOL) {
                    failures.push(format!("{who}/{name}: closed {closed} vs enumerated {exact}"));
                }
                if exact != closed {
                    worst = worst.max(err);
                }
            }
        }
        gates.push(gate(
            "closed-form-vs-enumeration",
            failures.is_empty(),
            if failures.is_empty() {
                format!("max relative error {worst:.3e} over 8 cells (tol {ENUMERATION_TOL:e})")
            } else {
                failures.join("; ")
            },
        ));
    }

    // perception strategy reproduces the deterministic decryptor
    let mut failures = Vec::new();
    for (who, channel) in &channels {
        let det = deterministic_pipeline_distortion(scenario, channel).total;
        let per = closed_form(scenario, channel, &ReceiverStrategy::PERCEPTION);
        if !rel_close(det, per, REDUCTION_TOL) {
            failures.push(format!("{who}: perception {per} vs deterministic {det}"));
        }
    }
    gates.push(gate(
        "perception-reduction",
        failures.is_empty(),
        if failures.is_empty() {
            format!("perception matches deterministic decryptor to {REDUCTION_TOL:e}")
        } else {
            failures.join("; ")
        },
    ));

    // closed form vs Monte Carlo
    let mut failures = Vec::new();
    let mut worst_sigma = 0.0f64;
    let mut bob_estimates = Vec::new();
    for (i, (who, channel)) in channels.iter().enumerate() {
        for (j, (name, strategy)) in strategies().into_iter().enumerate() {
            let seed = options.seed.wrapping_add((i * 4 + j) as u64);
            let est = estimate_distortion_parallel(scenario, channel, &strategy, options.trials, seed, options.workers)?;
            let closed = closed_form(scenario, channel, &strategy);
            if est.std_error > 0.0 {
                worst_sigma = worst_sigma.max((est.mean - closed).abs() / est.std_error);
            }
            if !mc_agrees(&est, closed) {
                failures.push(format!(
                    "{who}/{name}: MC {:.6} ± {:.2e} vs closed {closed:.6}",
                    est.mean, est.std_error
                ));
            }
            if i == 0 {
                bob_estimates.push((name, est));
            }
        }
    }
    gates.push(gate(
        "closed-form-vs-monte-carlo",
        failures.is_empty(),
        if failures.is_empty() {
            format!("8 cells within {MC_SIGMAS}σ (worst {worst_sigma:.2}σ, {} trials)", options.trials)
        } else {
            failures.join("; ")
        },
    ));

    // receiver optimality, analytically and in simulation
    let bob = &channels[0].1;
    let (solution, _) = minimum_distortion(scenario, bob);
    let best = closed_form(scenario, bob, &solution.strategy);
    let mut failures: Vec<String> = strategies()
        .into_iter()
        .filter(|(_, s)| best > closed_form(scenario, bob, s) + 1e-12)
        .map(|(name, _)| format!("{} beaten by {name}", solution.label()))
        .collect();
    let opt_est = estimate_distortion_parallel(
        scenario,
        bob,
        &solution.strategy,
        options.trials,
        options.seed.wrapping_add(100),
        options.workers,
    )?;
    for (name, est) in &bob_estimates {
        let combined = (opt_est.std_error.powi(2) + est.std_error.powi(2)).sqrt();
        if opt_est.mean > est.mean + MC_SIGMAS * combined + 1e-12 {
            failures.push(format!("simulated {} worse than {name}", solution.label()));
        }
    }
    gates.push(gate(
        "receiver-optimality",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} optimal for Bob (D̃ = {best:.6e})", solution.label())
        } else {
            failures.join("; ")
        },
    ));

    let (ok, detail) = cipher_identities(scenario, options.seed);
    gates.push(gate("cipher-identities", ok, detail));

    Ok(ValidationReport { gates })
}

fn cipher_identities(scenario: &Scenario, seed: u64) -> (bool, String) {
    let codebook = scenario.codebook();
    let cipher = ShiftCipher::new(codebook);
    let check = |w: u64, k: KeyValue| -> bool {
        let w = Codeword::Word(w);
        let Ok(s) = cipher.encrypt(w, k) else {
            return false;
        };
        let fixed_point_free = k.is_null() == (s == w);
        let erasure_passes = cipher.decrypt(Codeword::Null, k) == Ok(Codeword::Null);
        cipher.decrypt(s, k) == Ok(w) && fixed_point_free && erasure_passes
    };
    if codebook.get() <= 64 {
        let size = codebook.get() as u64;
        let ok = (0..size).all(|w| std::iter::once(KeyValue::Null).chain((1..size).map(KeyValue::Key)).all(|k| check(w, k)));
        (ok, format!("exhaustive over {size}×{size} (w, k) pairs"))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = 10_000;
        let ok = (0..samples).all(|i| {
            let w = uniform_codeword(&mut rng, codebook);
            let k = if i % 10 == 0 { KeyValue::Null } else { KeyValue::Key(uniform_key(&mut rng, codebook)) };
            check(w, k)
        });
        (ok, format!("{samples} random (w, k) pairs"))
    }
}
