//! Receiver and transmitter optimizers.
//!
//! The receiver minimizes `D̃` over the strategy simplex. Since `D̃` is affine
//! in `β`, the optimum puts all mass on the option(s) with the smallest `Δ`.
//!
//! The transmitter picks the activation rate `α` that maximizes Eve's
//! minimized distortion while keeping Bob's minimized distortion under a
//! budget. Each `Δᵢ` is affine in `α`, so both minimized distortions are
//! lower envelopes of three lines in `α`: concave and piecewise linear with
//! at most two breakpoints. Bob's feasible set is `[0, 1]` minus one open
//! interval, and Eve's maximum over it is attained at a feasible endpoint or
//! at one of her breakpoints.

pub mod pwl;

use crate::channels::TransportChannel;
use crate::distortion::{
    delta_terms, opportunistic_distortion, DeltaTerms, DistortionReport, ReceiverOption, ReceiverStrategy,
};
use crate::error::{PldError, Result};
use crate::model::Scenario;

pub use pwl::{Affine, LowerEnvelope, Piece};

const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ReceiverSolution {
    pub strategy: ReceiverStrategy,
    /// Options carrying the mass; more than one on a tie.
    pub active: Vec<ReceiverOption>,
    pub min_delta: f64,
}

impl ReceiverSolution {
    pub fn label(&self) -> String {
        match self.active.as_slice() {
            [single] => single.name().to_string(),
            many => format!(
                "tie({})",
                many.iter().map(|o| o.name()).collect::<Vec<_>>().join("+")
            ),
        }
    }
}

/// Mass on `argmin Δ`; ties within `1e-12·max Δ` share the mass equally.
pub fn optimal_receiver_strategy(deltas: &DeltaTerms) -> ReceiverSolution {
    let values = deltas.as_array();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = values.iter().copied().fold(0.0, f64::max);
    let active: Vec<ReceiverOption> = ReceiverOption::ALL
        .into_iter()
        .filter(|&o| deltas.get(o) - min <= TIE_TOL * scale)
        .collect();
    let share = 1.0 / active.len() as f64;
    let mut weights = [0.0; 3];
    for &o in &active {
        weights[o as usize] = share;
    }
    let strategy = ReceiverStrategy::new(weights[0], weights[1], weights[2])
        .expect("equal shares lie on the simplex");
    ReceiverSolution {
        strategy,
        active,
        min_delta: min,
    }
}

/// Receiver's optimal strategy at fixed channel conditions, with the
/// distortion it attains.
pub fn minimum_distortion(scenario: &Scenario, channel: &TransportChannel) -> (ReceiverSolution, DistortionReport) {
    let solution = optimal_receiver_strategy(&delta_terms(scenario, channel.eps_secondary));
    let report = opportunistic_distortion(scenario, channel, &solution.strategy);
    (solution, report)
}

/// `Δ₁(α), Δ₂(α), Δ₃(α)` as lines in `α`.
pub fn delta_lines(scenario: &Scenario, eps_s: f64) -> [Affine; 3] {
    let model = &scenario.distortion;
    let miss = scenario.codebook().exclusion_miss_ratio();
    [
        Affine::new(0.0, eps_s * model.d_conf),
        Affine::new(model.d_loss, -model.d_loss * (1.0 - eps_s)),
        Affine::new(model.d_conf, -model.d_conf * (1.0 - eps_s * miss)),
    ]
}

/// `α ↦ εᵖD_loss + (1 − εᵖ)·min Δᵢ(α)` on `[0, 1]`; line `i` of the
/// envelope belongs to option `ReceiverOption::ALL[i]`.
pub fn receiver_value_of_alpha(scenario: &Scenario, channel: &TransportChannel) -> LowerEnvelope {
    let ep = channel.eps_primary;
    let floor = ep * scenario.distortion.d_loss;
    let lines = delta_lines(scenario, channel.eps_secondary)
        .iter()
        .map(|d| Affine::new(floor + (1.0 - ep) * d.intercept, (1.0 - ep) * d.slope))
        .collect();
    LowerEnvelope::new(lines, 0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeceptionOptimum {
    pub alpha: f64,
    pub eve_distortion: f64,
    pub bob_distortion: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeceptionPlan {
    /// Bob's feasible activation rates as closed intervals.
    pub feasible_intervals: Vec<(f64, f64)>,
    /// `None` when no `α` meets Bob's budget.
    pub optimum: Option<DeceptionOptimum>,
}

impl DeceptionPlan {
    pub fn feasible(&self) -> bool {
        self.optimum.is_some()
    }
}

/// Maximizes Eve's minimized distortion over `α ∈ [0, 1]` subject to Bob's
/// minimized distortion staying within `d_max`. Ties go to the larger `α`.
///
/// `scenario` supplies the codebook and distortion constants; its own
/// `alpha` is ignored.
pub fn optimize_deception(
    scenario: &Scenario,
    bob: &TransportChannel,
    eve: &TransportChannel,
    d_max: f64,
) -> Result<DeceptionPlan> {
    if !(d_max > 0.0 && d_max.is_finite()) {
        return Err(PldError::InvalidBudget(d_max));
    }
    let bob_curve = receiver_value_of_alpha(scenario, bob);
    let eve_curve = receiver_value_of_alpha(scenario, eve);
    // Eve's value is a positive affine image of min Δᵢ(α); ranking on the
    // unscaled envelope keeps the comparison well conditioned when 1 − εᵖ is tiny.
    let eve_rank = LowerEnvelope::new(delta_lines(scenario, eve.eps_secondary).to_vec(), 0.0, 1.0);
    let feasible_intervals = bob_curve.sublevel_set(d_max);

    let mut candidates: Vec<f64> = feasible_intervals.iter().flat_map(|&(a, b)| [a, b]).collect();
    candidates.extend(
        eve_rank
            .breakpoints()
            .into_iter()
            .filter(|&x| feasible_intervals.iter().any(|&(a, b)| a <= x && x <= b)),
    );
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let values: Vec<f64> = candidates.iter().map(|&a| eve_rank.eval(a)).collect();
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let optimum = candidates
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v >= best - 1e-14 * best.abs().max(1.0))
        .map(|(&alpha, _)| alpha)
        .next_back()
        .map(|alpha| DeceptionOptimum {
            alpha,
            eve_distortion: eve_curve.eval(alpha),
            bob_distortion: bob_curve.eval(alpha),
        });
    Ok(DeceptionPlan {
        feasible_intervals,
        optimum,
    })
}

/// [`optimize_deception`] with Bob's and Eve's channels derived from the
/// scenario's SNRs. Eve's error rates are evaluated at her expected SNR.
pub fn plan_deception(scenario: &Scenario, d_max: f64) -> Result<DeceptionPlan> {
    let code = scenario.fbl_code()?;
    let bob = TransportChannel::from_snr_db(scenario.snr_bob_db, code)?;
    let eve = TransportChannel::from_snr_db(scenario.snr_eve_db, code)?;
    optimize_deception(scenario, &bob, &eve, d_max)
}
