//! Experiment drivers producing CSV tables.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::TransportChannel;
use crate::distortion::delta_terms;
use crate::error::{PldError, Result};
use crate::fbl::{packet_error_rate_db, FblCode};
use crate::model::Scenario;
use crate::strategy::{minimum_distortion, optimize_deception};

/// Inclusive SNR grid `lo, lo + step, …` up to `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl SnrRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
            return Err(PldError::InvalidRange(format!("non-finite bound in {lo}:{hi}:{step}")));
        }
        if lo >= hi {
            return Err(PldError::InvalidRange(format!("lower bound {lo} not below upper bound {hi}")));
        }
        if step <= 0.0 {
            return Err(PldError::InvalidRange(format!("step {step} must be positive")));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

impl Default for SnrRange {
    fn default() -> Self {
        Self { lo: -5.0, hi: 5.0, step: 0.5 }
    }
}

impl FromStr for SnrRange {
    type Err = PldError;

    /// `lo:hi:step`, e.g. `-5:5:0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(PldError::InvalidRange(format!("expected lo:hi:step, got {s:?}")));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| PldError::InvalidRange(format!("not a number: {t:?}")))
        };
        Self::new(num(lo)?, num(hi)?, num(step)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorRow {
    pub snr_db: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReceiverRow {
    pub snr_db: f64,
    pub eps_p: f64,
    pub eps_s: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub d_tilde_min: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaRow {
    pub snr_bob_db: f64,
    pub snr_eve_db: f64,
    pub alpha_opt: Option<f64>,
    pub eve_distortion: Option<f64>,
    pub bob_distortion: Option<f64>,
    pub feasible: bool,
}

pub fn error_table(range: &SnrRange, code: FblCode) -> Result<Vec<ErrorRow>> {
    range
        .points()
        .into_iter()
        .map(|snr_db| {
            Ok(ErrorRow {
                snr_db,
                epsilon: packet_error_rate_db(snr_db, code)?,
            })
        })
        .collect()
}

/// Receiver's optimal strategy across a common SNR for both channels.
pub fn sweep_receiver(scenario: &Scenario, range: &SnrRange) -> Result<Vec<ReceiverRow>> {
    let code = scenario.fbl_code()?;
    range
        .points()
        .par_iter()
        .map(|&snr_db| {
            let channel = TransportChannel::from_snr_db(snr_db, code)?;
            let deltas = delta_terms(scenario, channel.eps_secondary);
            let (solution, report) = minimum_distortion(scenario, &channel);
            let [beta1, beta2, beta3] = solution.strategy.weights();
            Ok(ReceiverRow {
                snr_db,
                eps_p: channel.eps_primary,
                eps_s: channel.eps_secondary,
                delta1: deltas.perception,
                delta2: deltas.dropping,
                delta3: deltas.exclusion,
                beta1,
                beta2,
                beta3,
                d_tilde_min: report.total,
            })
        })
        .collect()
}

/// Optimal activation rate over a (Bob SNR × Eve SNR) grid, Bob-major.
pub fn optimize_alpha(
    scenario: &Scenario,
    d_max: f64,
    bob_range: &SnrRange,
    eve_range: &SnrRange,
) -> Result<Vec<AlphaRow>> {
    let code = scenario.fbl_code()?;
    let cells: Vec<(f64, f64)> = bob_range
        .points()
        .into_iter()
        .flat_map(|b| eve_range.points().into_iter().map(move |e| (b, e)))
        .collect();
    cells
        .par_iter()
        .map(|&(snr_bob_db, snr_eve_db)| {
            let bob = TransportChannel::from_snr_db(snr_bob_db, code)?;
            let eve = TransportChannel::from_snr_db(snr_eve_db, code)?;
            let plan = optimize_deception(scenario, &bob, &eve, d_max)?;
            Ok(AlphaRow {
                snr_bob_db,
                snr_eve_db,
                alpha_opt: plan.optimum.map(|o| o.alpha),
                eve_distortion: plan.optimum.map(|o| o.eve_distortion),
                bob_distortion: plan.optimum.map(|o| o.bob_distortion),
                feasible: plan.feasible(),
            })
        })
        .collect()
}

/// Comma-separated, header row first, LF line endings.
pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> std::result::Result<(), csv::Error> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn to_csv_string<T: Serialize>(rows: &[T]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is UTF-8")
}
