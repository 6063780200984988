//! Acceptance criteria. Prints one `[criterion N] PASS|FAIL` line each and
//! exits non-zero if any fails. Pass criterion numbers as arguments to run a
//! subset, e.g. `cargo test --test acceptance -- 4 7`.

#![allow(clippy::excessive_precision)]

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pld_core::channels::TransportChannel;
use pld_core::cli::{error_table, optimize_alpha, sweep_receiver, SnrRange};
use pld_core::crypto::ShiftCipher;
use pld_core::distortion::{
    delta_terms, deterministic_pipeline_distortion, enumeration_oracle, opportunistic_distortion,
};
use pld_core::fbl::packet_error_rate_db;
use pld_core::model::MAX_CODEBOOK;
use pld_core::montecarlo::estimate_distortion;
use pld_core::strategy::{minimum_distortion, optimize_deception};
use pld_core::{
    CodebookSize, Codeword, DistortionModel, FblCode, KeyValue, ReceiverOption, ReceiverStrategy, Scenario,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()) + 1e-15
}

fn grid_strategies() -> [ReceiverStrategy; 4] {
    [
        ReceiverStrategy::PERCEPTION,
        ReceiverStrategy::DROPPING,
        ReceiverStrategy::EXCLUSION,
        ReceiverStrategy::uniform(),
    ]
}

/// S × α × εᵖ × εˢ × β grid shared by the first two criteria.
fn oracle_grid() -> Vec<(Scenario, TransportChannel, ReceiverStrategy)> {
    let eps = [0.0, 0.01, 0.1, 0.5];
    let mut cells = Vec::new();
    for size in [2u128, 3, 4, 16] {
        for alpha in [0.0, 0.5, 0.99, 1.0] {
            let s = Scenario { codebook_size: size, alpha, ..Scenario::default() };
            for ep in eps {
                for es in eps {
                    let ch = TransportChannel::new(ep, es).unwrap();
                    for b in grid_strategies() {
                        cells.push((s, ch, b));
                    }
                }
            }
        }
    }
    cells
}

fn criterion_1() -> Outcome {
    let cells = oracle_grid();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (s, ch, b) in &cells {
        let closed = opportunistic_distortion(s, ch, b).total;
        let exact = enumeration_oracle(s, ch, b).unwrap();
        if closed != exact {
            worst = worst.max((closed - exact).abs() / closed.abs().max(exact.abs()));
        }
        if !rel_close(closed, exact, 1e-10) {
            bad.push(format!("S={} α={} {:?} {:?}: {closed} vs {exact}", s.codebook_size, s.alpha, ch, b.weights()));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} cells, max rel err {worst:.2e}, {} over 1e-10 {}", cells.len(), bad.len(), bad.join("; ")),
    )
}

fn criterion_2() -> Outcome {
    const TRIALS: u64 = 1_000_000;
    let cells = oracle_grid();
    let mut failed = Vec::new();
    let mut rerun_ok = 0;
    for (i, (s, ch, b)) in cells.iter().enumerate() {
        let exact = opportunistic_distortion(s, ch, b).total;
        let est = estimate_distortion(s, ch, b, TRIALS, i as u64).unwrap();
        let agrees = |e: &pld_core::McEstimate| (e.mean - exact).abs() <= 4.0 * e.std_error + 1e-12 * exact.abs().max(1.0);
        if !agrees(&est) {
            let z = (est.mean - exact) / est.std_error;
            let fresh = estimate_distortion(s, ch, b, TRIALS, 1_000_000 + i as u64).unwrap();
            if agrees(&fresh) {
                rerun_ok += 1;
            }
            failed.push(format!("cell {i} at {z:.2}σ"));
        }
    }
    let pass_rate = 1.0 - failed.len() as f64 / cells.len() as f64;
    outcome(
        pass_rate >= 0.99,
        format!(
            "{}/{} cells within 4σ at {TRIALS} trials ({:.2}%); outside: [{}], {rerun_ok} of them pass a fresh-seed rerun",
            cells.len() - failed.len(),
            cells.len(),
            100.0 * pass_rate,
            failed.join(", ")
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut bad = 0;
    for _ in 0..1000 {
        let size = match rng.random_range(0..4) {
            0 => rng.random_range(2..=64u128),
            1 => rng.random_range(2..=u128::from(u64::MAX)),
            2 => MAX_CODEBOOK,
            _ => 2,
        };
        let d_loss = rng.random_range(0.01..10.0);
        let d_conf = d_loss * rng.random_range(1.01..100.0);
        let alpha: f64 = rng.random();
        let (ep, es): (f64, f64) = (rng.random(), rng.random());
        let s = Scenario { codebook_size: size, distortion: DistortionModel { d_loss, d_conf }, alpha, ..Scenario::default() };
        let ch = TransportChannel::new(ep, es).unwrap();
        let reference = ep * d_loss + alpha * (1.0 - ep) * es * d_conf;
        let perception = opportunistic_distortion(&s, &ch, &ReceiverStrategy::PERCEPTION).total;
        let deterministic = deterministic_pipeline_distortion(&s, &ch).total;
        for v in [perception, deterministic] {
            if v != reference {
                worst = worst.max((v - reference).abs() / reference.abs());
            }
            if !rel_close(v, reference, 1e-12) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("1000 random draws, max rel err {worst:.2e}, {bad} over 1e-12"))
}

fn leading_option(s: &Scenario, es: f64) -> ReceiverOption {
    let ch = TransportChannel::new(0.0, es).unwrap();
    minimum_distortion(s, &ch).0.active[0]
}

/// Bisects for the εˢ where the receiver's best option leaves `below`.
fn threshold(s: &Scenario, below: ReceiverOption, mut lo: f64, mut hi: f64) -> f64 {
    assert_eq!(leading_option(s, lo), below);
    assert_ne!(leading_option(s, hi), below);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if leading_option(s, mid) == below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn criterion_4() -> Outcome {
    let s = Scenario { codebook_size: 2, alpha: 0.99, ..Scenario::default() };
    let first = threshold(&s, ReceiverOption::Perception, 1e-6, 0.05);
    let second = threshold(&s, ReceiverOption::Dropping, 0.01, 0.5);
    let above = leading_option(&s, 0.5);
    let ok = (first - 1.0 / 891.0).abs() <= 1e-9
        && (second - 1.0 / 11.0).abs() <= 1e-9
        && above == ReceiverOption::Exclusion;
    outcome(
        ok,
        format!(
            "perception→dropping at {first:.12} (1/891 = {:.12}), dropping→exclusion at {second:.12} (1/11 = {:.12})",
            1.0 / 891.0,
            1.0 / 11.0
        ),
    )
}

fn criterion_5() -> Outcome {
    let s = Scenario { codebook_size: MAX_CODEBOOK, alpha: 0.99, ..Scenario::default() };
    let mut rows = sweep_receiver(&s, &SnrRange::default()).unwrap();
    rows.extend(sweep_receiver(&s, &SnrRange::new(-5.0, 5.0, 0.01).unwrap()).unwrap());
    let bad: Vec<f64> = rows.iter().filter(|r| r.beta3 != 0.0).map(|r| r.snr_db).collect();
    outcome(bad.is_empty(), format!("β3 = 0 at {}/{} SNR points; nonzero at {bad:?}", rows.len() - bad.len(), rows.len()))
}

fn regimes(size: u128) -> Vec<&'static str> {
    let s = Scenario { codebook_size: size, alpha: 0.99, ..Scenario::default() };
    let mut seq: Vec<&'static str> = Vec::new();
    for r in sweep_receiver(&s, &SnrRange::new(-5.0, 5.0, 0.05).unwrap()).unwrap() {
        let name = [("perception", r.beta1), ("dropping", r.beta2), ("exclusion", r.beta3)]
            .into_iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap()
            .0;
        if seq.last() != Some(&name) {
            seq.push(name);
        }
    }
    seq
}

fn criterion_6() -> Outcome {
    let small = regimes(2);
    let large = regimes(MAX_CODEBOOK);
    let ok = small == ["exclusion", "dropping", "perception"] && large == ["dropping", "perception"];
    outcome(ok, format!("S=2: {}; S=2^64: {}", small.join(" → "), large.join(" → ")))
}

fn criterion_7() -> Outcome {
    let code = FblCode::new(128, 64).unwrap();
    let rows = error_table(&SnrRange::default(), code).unwrap();
    let at_zero = packet_error_rate_db(0.0, code).unwrap();
    let decreasing = rows.windows(2).all(|w| w[1].epsilon < w[0].epsilon);
    let ends = rel_close(rows[0].epsilon, 0.999_999_868_027_410_25, 1e-12)
        && rel_close(rows[rows.len() - 1].epsilon, 7.694_309_028_960_260_5e-10, 1e-9);
    outcome(
        at_zero == 0.5 && decreasing && ends && rows.len() == 21,
        format!(
            "ε(0 dB) = {at_zero}, strictly decreasing over {} points: {decreasing}, ε(−5 dB) = {:e}, ε(5 dB) = {:e}",
            rows.len(),
            rows[0].epsilon,
            rows[rows.len() - 1].epsilon
        ),
    )
}

fn random_channel(rng: &mut ChaCha8Rng, code: FblCode) -> TransportChannel {
    if rng.random_bool(0.5) {
        TransportChannel::from_snr_db(rng.random_range(-5.0..5.0), code).unwrap()
    } else {
        let log_uniform = |rng: &mut ChaCha8Rng| 10f64.powf(rng.random_range(-6.0..0.0));
        TransportChannel::new(log_uniform(rng), log_uniform(rng)).unwrap()
    }
}

fn criterion_8() -> Outcome {
    const N: usize = 10_000;
    let step = 1.0 / (N - 1) as f64;
    let grid: Vec<f64> = (0..N).map(|i| i as f64 * step).collect();
    let code = FblCode::new(128, 64).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    let mut feasible_cases = 0;
    let mut refined = 0;
    for case in 0..1000 {
        let size = [2u128, 3, 4, 16, MAX_CODEBOOK][rng.random_range(0..5)];
        let d_loss = rng.random_range(0.1..2.0);
        let d_conf = d_loss * rng.random_range(1.5..20.0);
        let s = Scenario { codebook_size: size, distortion: DistortionModel { d_loss, d_conf }, ..Scenario::default() };
        let bob = random_channel(&mut rng, code);
        let eve = random_channel(&mut rng, code);
        let value = |ch: &TransportChannel, a: f64| minimum_distortion(&s.with_alpha(a), ch).1.total;
        let bob_values: Vec<f64> = grid.iter().map(|&a| value(&bob, a)).collect();
        let (bob_min, bob_max) = bob_values.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let d_max = rng.random_range(0.8 * bob_min..1.1 * bob_max).max(1e-12);

        let plan = optimize_deception(&s, &bob, &eve, d_max).unwrap();
        // rank by min Δ, which orders α exactly like Eve's value but without
        // the 1 − εᵖ factor that can push differences below round-off
        let rank = |a: f64| delta_terms(&s.with_alpha(a), eve.eps_secondary).as_array().into_iter().fold(f64::INFINITY, f64::min);
        let grid_best = grid
            .iter()
            .zip(&bob_values)
            .filter(|(_, &b)| b <= d_max)
            .map(|(&a, _)| (a, rank(a)))
            .fold(None, |best: Option<(f64, f64)>, (a, r)| match best {
                Some((_, br)) if br > r => best,
                _ => Some((a, r)),
            })
            .map(|(a, _)| (a, value(&eve, a)));
        match (plan.optimum, grid_best) {
            (None, None) => {
                if bob.eps_primary * d_loss <= d_max {
                    bad.push(format!("case {case}: infeasible plan although εᵖ·D_loss ≤ D_max"));
                }
            }
            (Some(opt), Some((grid_alpha, grid_value))) => {
                feasible_cases += 1;
                let eve_check = value(&eve, opt.alpha);
                let bob_check = value(&bob, opt.alpha);
                let sound = (opt.eve_distortion - eve_check).abs() <= 1e-9 && bob_check <= d_max + 1e-12;
                // a grid can only undershoot the optimum, by up to slope × step
                let not_worse = opt.eve_distortion >= grid_value - 1e-9;
                let matched = if (opt.alpha - grid_alpha).abs() <= step {
                    not_worse
                } else if not_worse {
                    // optimum lies on a feasible sliver or peak narrower than
                    // the grid step; refine the grid around it
                    refined += 1;
                    let (lo, hi) = ((opt.alpha - step).max(0.0), (opt.alpha + step).min(1.0));
                    let fine = (hi - lo) / (N - 1) as f64;
                    let best = (0..N)
                        .map(|i| lo + i as f64 * fine)
                        .filter(|&a| value(&bob, a) <= d_max)
                        .map(|a| (a, rank(a), value(&eve, a)))
                        .fold(None, |best: Option<(f64, f64, f64)>, c| match best {
                            Some(b) if b.1 > c.1 => best,
                            _ => Some(c),
                        });
                    best.is_some_and(|(a, _, v)| opt.eve_distortion >= v - 1e-9 && (opt.alpha - a).abs() <= fine)
                } else {
                    false
                };
                let ok = sound && matched;
                if !ok {
                    bad.push(format!(
                        "case {case}: exact α={} D̆={} (recheck {eve_check}, bob {bob_check} ≤ {d_max}) vs grid α={grid_alpha} D̆={grid_value}",
                        opt.alpha, opt.eve_distortion
                    ));
                }
            }
            (exact, grid) => bad.push(format!("case {case}: feasibility disagrees, exact {exact:?} grid {grid:?}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "1000 cases ({feasible_cases} feasible) against a {N}-point grid, {refined} sit on sub-step features and were checked on a {N}-point local refinement; {} mismatches {}",
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn criterion_9() -> Outcome {
    let s = Scenario { codebook_size: MAX_CODEBOOK, ..Scenario::default() };
    let d_max = 0.01;
    let bob_range = SnrRange::default();
    let eve_range = SnrRange::new(-5.0, 5.0, 0.1).unwrap();
    let rows = optimize_alpha(&s, d_max, &bob_range, &eve_range).unwrap();
    let code = s.fbl_code().unwrap();
    let per_bob = eve_range.points().len();
    let mut bad = Vec::new();
    let mut feasible_bobs = Vec::new();
    for chunk in rows.chunks(per_bob) {
        let bob_db = chunk[0].snr_bob_db;
        let bob = TransportChannel::from_snr_db(bob_db, code).unwrap();
        let expect = bob.eps_primary * s.distortion.d_loss <= d_max;
        if chunk.iter().any(|r| r.feasible != expect) {
            bad.push(format!("feasibility at γ_Bob = {bob_db}"));
        }
        if !expect {
            // no α on a fine grid meets the budget
            let any = (0..=1000).any(|i| minimum_distortion(&s.with_alpha(f64::from(i) / 1000.0), &bob).1.total <= d_max);
            if any || chunk.iter().any(|r| r.alpha_opt.is_some()) {
                bad.push(format!("infeasible γ_Bob = {bob_db} has a feasible α"));
            }
            continue;
        }
        feasible_bobs.push(bob_db);
        for w in chunk.windows(2) {
            let (a0, a1) = (w[0].alpha_opt.unwrap(), w[1].alpha_opt.unwrap());
            let (e0, e1) = (w[0].eve_distortion.unwrap(), w[1].eve_distortion.unwrap());
            if a1 < a0 - 1e-12 || e1 > e0 + 1e-12 * e0 {
                bad.push(format!("γ_Bob = {bob_db}, γ_Eve {}→{}: α {a0}→{a1}, D̆ {e0}→{e1}", w[0].snr_eve_db, w[1].snr_eve_db));
            }
            if w[0].bob_distortion.unwrap() > d_max + 1e-12 {
                bad.push(format!("budget exceeded at γ_Bob = {bob_db}"));
            }
        }
    }
    outcome(
        bad.is_empty() && !feasible_bobs.is_empty() && feasible_bobs.len() < bob_range.points().len(),
        format!(
            "feasible γ_Bob (dB): {feasible_bobs:?}; {} Eve points each; {} violations {}",
            per_bob,
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn identities_hold(cipher: &ShiftCipher, w: u64, k: KeyValue) -> bool {
    let w = Codeword::Word(w);
    let Ok(s) = cipher.encrypt(w, k) else { return false };
    let Ok(plain) = cipher.decrypt(s, KeyValue::Null) else { return false };
    let round_trip = cipher.decrypt(s, k) == Ok(w);
    let erasure = cipher.decrypt(Codeword::Null, k) == Ok(Codeword::Null);
    let shifted = if k.is_null() { s == w } else { s != w };
    round_trip && erasure && shifted && plain == s
}

fn criterion_10() -> Outcome {
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for size in 2u64..=64 {
        let cipher = ShiftCipher::new(CodebookSize::new(u128::from(size)).unwrap());
        let keys: Vec<KeyValue> = std::iter::once(KeyValue::Null).chain((1..size).map(KeyValue::Key)).collect();
        for &k in &keys {
            let mut image = vec![false; size as usize];
            for w in 0..size {
                checked += 1;
                if !identities_hold(&cipher, w, k) {
                    bad.push(format!("S={size} w={w} k={k:?}"));
                }
                if let Ok(Codeword::Word(s)) = cipher.encrypt(Codeword::Word(w), k) {
                    image[s as usize] = true;
                }
            }
            if !image.iter().all(|&hit| hit) {
                bad.push(format!("S={size} k={k:?} not a bijection"));
            }
        }
    }
    let cipher = ShiftCipher::new(CodebookSize::new(MAX_CODEBOOK).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let edges = [(0, 1), (u64::MAX, 1), (u64::MAX, u64::MAX), (1, u64::MAX), (0, u64::MAX)];
    for (w, k) in edges {
        if !identities_hold(&cipher, w, KeyValue::Key(k)) {
            bad.push(format!("S=2^64 w={w} k={k}"));
        }
    }
    for _ in 0..1_000_000 {
        let w: u64 = rng.random();
        let k = KeyValue::Key(rng.random_range(1..=u64::MAX));
        if !identities_hold(&cipher, w, k) {
            bad.push(format!("S=2^64 w={w} k={k:?}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} exhaustive (S, w, k) triples for S ≤ 64 plus 10^6 random pairs at S = 2^64; {} failures {}", bad.len(), bad.join("; ")),
    )
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (n, run) in criteria {
        if !selected.is_empty() && !selected.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let verdict = if result.ok { "PASS" } else { "FAIL" };
        println!("[criterion {n}] {verdict} ({:.1}s) {}", start.elapsed().as_secs_f64(), result.detail);
        failures += usize::from(!result.ok);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
