//! Ladder construction from the positive score changes seen by an
//! infinite-temperature random walk.
//!
//! Four anchor temperatures are placed where the mean Metropolis acceptance
//! of those changes is 99%, 60%, 1% and 1e-6. The hottest anchor is kept on
//! its own; replicas are filled in linearly in beta between the second and
//! third anchors and between the third and fourth.

use crate::error::{Error, Result};

use super::replica::{replica_rng, Replica, SweepStats};
use super::run::{run_with_ladder_stats, RunConfig, StopCondition};
use super::{Problem, TemperatureLadder};

pub const ANCHOR_RATES: [f64; 4] = [0.99, 0.60, 0.01, 1e-6];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReplicaCount {
    /// Pick a count inside `[min, max]`, preferring `target`.
    Auto {
        min: usize,
        max: usize,
        target: usize,
    },
    Fixed(usize),
}

impl Default for ReplicaCount {
    fn default() -> Self {
        ReplicaCount::Auto {
            min: 41,
            max: 61,
            target: 51,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CalibrationConfig {
    pub warmup_sweeps: usize,
    pub anchor_rates: [f64; 4],
    pub beta_max: f64,
    pub tolerance: f64,
    pub replicas: ReplicaCount,
    /// Midpoint insertion rounds after probing; 0 disables refinement.
    pub refine_rounds: usize,
    pub refine_min_rate: f64,
    pub probe_repetitions: u64,
    pub seed: u64,
}

impl Default for CalibrationConfig {
    fn default() -> Self {
        CalibrationConfig {
            warmup_sweeps: 200,
            anchor_rates: ANCHOR_RATES,
            beta_max: 100.0,
            tolerance: 1e-6,
            replicas: ReplicaCount::default(),
            refine_rounds: 0,
            refine_min_rate: 0.2,
            probe_repetitions: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Calibration {
    pub ladder: TemperatureLadder,
    /// Betas of the four anchors, hottest first.
    pub anchors: [f64; 4],
    pub samples: usize,
    /// Swap rates from the last refinement probe, if any ran.
    pub probe_rates: Option<Vec<f64>>,
}

fn mean_acceptance(deltas: &[f64], beta: f64) -> f64 {
    deltas.iter().map(|d| (-beta * d).exp()).sum::<f64>() / deltas.len() as f64
}

/// Solves `mean(exp(-beta * delta)) = rate` for beta by bisection on
/// `[0, beta_max]`; returns `beta_max` when even that is not cold enough.
pub fn solve_beta(deltas: &[f64], rate: f64, beta_max: f64, tolerance: f64) -> f64 {
    assert!(!deltas.is_empty());
    if mean_acceptance(deltas, beta_max) >= rate {
        return beta_max;
    }
    let (mut lo, mut hi) = (0.0, beta_max);
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if mean_acceptance(deltas, mid) > rate {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Positive score changes proposed during `sweeps` sweeps at beta = 0.
pub fn warmup_deltas(problem: &Problem, sweeps: usize, seed: u64) -> Vec<f64> {
    let mut replica = Replica::random(problem, replica_rng(seed, u64::MAX - 1));
    let mut stats = SweepStats::collecting();
    for _ in 0..sweeps {
        replica.sweep(problem, 0.0, f64::NEG_INFINITY, &mut stats);
    }
    stats.positive_deltas.unwrap_or_default()
}

fn linear_fill(lo: f64, hi: f64, inner: usize) -> impl Iterator<Item = f64> {
    (1..=inner).map(move |i| lo + (hi - lo) * i as f64 / (inner + 1) as f64)
}

fn assemble(anchors: [f64; 4], m: usize) -> Vec<f64> {
    let [b1, b2, bk, bl] = anchors;
    match m {
        0 | 1 => unreachable!("ladders have at least two slots"),
        2 => vec![b1, bl],
        3 => vec![b1, bk, bl],
        _ => {
            let inner = m - 4;
            let first = inner.div_ceil(2);
            let second = inner - first;
            let mut betas = vec![b1, b2];
            betas.extend(linear_fill(b2, bk, first));
            betas.push(bk);
            betas.extend(linear_fill(bk, bl, second));
            betas.push(bl);
            betas
        }
    }
}

/// Builds a ladder from a beta = 0 warm-up, optionally refined by probing.
pub fn calibrate_ladder(problem: &Problem, config: &CalibrationConfig) -> Result<Calibration> {
    let deltas = warmup_deltas(problem, config.warmup_sweeps, config.seed);
    if deltas.is_empty() {
        return Err(Error::DegenerateWarmup(format!(
            "no energy-increasing proposals in {} sweeps; use a longer warm-up",
            config.warmup_sweeps
        )));
    }
    let mut anchors = [0.0; 4];
    for (a, &r) in anchors.iter_mut().zip(&config.anchor_rates) {
        *a = solve_beta(&deltas, r, config.beta_max, config.tolerance);
    }
    if anchors.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DegenerateWarmup(format!(
            "anchor temperatures collapsed ({anchors:?}); raise beta_max or lengthen the warm-up"
        )));
    }
    let (m, max) = match config.replicas {
        ReplicaCount::Fixed(m) if m >= 2 => (m, m),
        ReplicaCount::Fixed(m) => {
            return Err(Error::invalid(format!("need at least 2 replicas, got {m}")))
        }
        ReplicaCount::Auto { min, max, target } => {
            if min < 2 || min > max {
                return Err(Error::invalid("replica range must satisfy 2 <= min <= max"));
            }
            (target.clamp(min, max), max)
        }
    };
    let mut ladder = TemperatureLadder::new(assemble(anchors, m))?;

    let mut probe_rates = None;
    for round in 0..config.refine_rounds {
        let rates = probe_swap_rates(
            problem,
            &ladder,
            config.probe_repetitions,
            config.seed ^ round as u64,
        )?;
        let low: Vec<usize> = (0..rates.len())
            .filter(|&i| rates[i] < config.refine_min_rate)
            .collect();
        probe_rates = Some(rates);
        if low.is_empty() || ladder.len() >= max {
            break;
        }
        let room = max - ladder.len();
        let mut betas = ladder.betas().to_vec();
        // Worst pairs first, inserted right to left to keep indices valid.
        let mut chosen = low;
        chosen.sort_by(|&a, &b| {
            probe_rates.as_ref().unwrap()[a].total_cmp(&probe_rates.as_ref().unwrap()[b])
        });
        chosen.truncate(room);
        chosen.sort_unstable_by(|a, b| b.cmp(a));
        for i in chosen {
            betas.insert(i + 1, 0.5 * (betas[i] + betas[i + 1]));
        }
        ladder = TemperatureLadder::new(betas)?;
    }

    Ok(Calibration {
        ladder,
        anchors,
        samples: deltas.len(),
        probe_rates,
    })
}

/// Runs the ladder for `repetitions` repetitions and returns the measured
/// swap rate of each adjacent pair.
pub fn probe_swap_rates(
    problem: &Problem,
    ladder: &TemperatureLadder,
    repetitions: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    let config = RunConfig::new(StopCondition::repetitions(repetitions), seed).without_timing();
    let (_, ladder) = run_with_ladder_stats(problem, ladder, &config)?;
    Ok(ladder.swap_rates())
}
