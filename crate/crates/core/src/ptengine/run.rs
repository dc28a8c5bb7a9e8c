use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formats::{SwapRateSnapshot, Trace, TraceRow};
use crate::netcore::LogicNetwork;

use super::replica::{replica_rng, Candidate, Replica, SweepStats};
use super::swap::{swap_phase, Parity};
use super::{Problem, TemperatureLadder};

#[derive(Clone, Debug)]
pub struct StopCondition {
    pub max_repetitions: u64,
    pub time_limit: Option<Duration>,
    /// Stop once the best score is at or below this value; `Some(0.0)` stops
    /// at the first exact network, `Some(q - p)` at `q` gates.
    pub score_goal: Option<f64>,
}

impl StopCondition {
    pub fn repetitions(max_repetitions: u64) -> Self {
        StopCondition {
            max_repetitions,
            time_limit: None,
            score_goal: None,
        }
    }

    pub fn with_goal(mut self, score_goal: f64) -> Self {
        self.score_goal = Some(score_goal);
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub stop: StopCondition,
    pub seed: u64,
    /// Worker threads for the sweeps; 1 runs inline.
    pub threads: usize,
    /// Record wall time in trace rows.
    pub record_time: bool,
    /// Emit a swap-rate snapshot into the trace every this many repetitions.
    pub swap_rate_interval: Option<u64>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl RunConfig {
    pub fn new(stop: StopCondition, seed: u64) -> Self {
        RunConfig {
            stop,
            seed,
            threads: 1,
            record_time: true,
            swap_rate_interval: None,
            cancel: None,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn without_timing(mut self) -> Self {
        self.record_time = false;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    GoalReached,
    MaxRepetitions,
    TimeLimit,
    Cancelled,
}

#[derive(Clone, Debug)]
pub struct SynthesisReport {
    /// Cleaned best exact network, if one was found.
    pub best_network: Option<LogicNetwork>,
    pub best_gate_count: Option<usize>,
    pub best_score: f64,
    pub repetitions: u64,
    pub elapsed: Duration,
    pub stop_reason: StopReason,
    /// Swap acceptance per adjacent slot pair.
    pub swap_rates: Vec<f64>,
    /// Metropolis acceptance per slot, hottest first.
    pub acceptance_rates: Vec<f64>,
    pub trace: Trace,
}

/// Swap stream for one repetition, independent of the replica streams.
fn swap_rng(seed: u64, repetition: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5357_4150_5357_4150);
    rng.set_stream(repetition);
    rng
}

/// Runs parallel tempering until a stop condition fires.
pub fn run(
    problem: &Problem,
    ladder: &TemperatureLadder,
    config: &RunConfig,
) -> Result<SynthesisReport> {
    run_with_ladder_stats(problem, ladder, config).map(|(r, _)| r)
}

/// Like [`run`], also returning the ladder with its swap counters filled in.
pub fn run_with_ladder_stats(
    problem: &Problem,
    ladder: &TemperatureLadder,
    config: &RunConfig,
) -> Result<(SynthesisReport, TemperatureLadder)> {
    problem.moves.validate()?;
    if problem.constraints.max_nodes == 0 {
        return Err(Error::invalid("gate budget must be positive"));
    }
    let start = Instant::now();
    let p = problem.max_nodes();
    let m = ladder.len();
    let mut ladder = ladder.clone();
    ladder.reset_counters();

    let mut replicas: Vec<Replica> = (0..m)
        .map(|i| Replica::random(problem, replica_rng(config.seed, i as u64)))
        .collect();
    // slots[s] = replica at slot s.
    let mut slots: Vec<usize> = (0..m).collect();
    let mut slot_of = vec![0usize; m];
    let mut slot_stats = vec![SweepStats::default(); m];

    let pool = if config.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(config.threads.min(m))
                .build()
                .map_err(|e| Error::invalid(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    let mut best_score = f64::INFINITY;
    let mut best_network: Option<LogicNetwork> = None;
    let mut trace = Trace::default();

    // Initial states count as the first improvement.
    let initial = replicas
        .iter_mut()
        .map(|r| r.candidate())
        .enumerate()
        .min_by(|a, b| a.1.score.total_cmp(&b.1.score).then(a.0.cmp(&b.0)));
    let mut pending = initial.map(|(_, c)| c);

    let mut repetitions = 0;
    let stop_reason = loop {
        if let Some(c) = pending.take() {
            if c.score < best_score {
                best_score = c.score;
                if let Some(net) = c.network {
                    if best_network.as_ref().is_none_or(|b| net.len() < b.len()) {
                        best_network = Some(net);
                    }
                }
                trace.rows.push(TraceRow {
                    repetition: repetitions,
                    best_q: best_network.as_ref().map_or(p, |n| n.len()),
                    best_score,
                    elapsed_seconds: config.record_time.then(|| start.elapsed().as_secs_f64()),
                });
            }
        }
        if config.stop.score_goal.is_some_and(|g| best_score <= g) {
            break StopReason::GoalReached;
        }
        if repetitions >= config.stop.max_repetitions {
            break StopReason::MaxRepetitions;
        }
        if config.stop.time_limit.is_some_and(|t| start.elapsed() >= t) {
            break StopReason::TimeLimit;
        }
        if config
            .cancel
            .as_ref()
            .is_some_and(|c| c.load(Ordering::Relaxed))
        {
            break StopReason::Cancelled;
        }
        repetitions += 1;

        for (s, &r) in slots.iter().enumerate() {
            slot_of[r] = s;
        }
        let threshold = best_score;
        let betas = ladder.betas();
        let sweep = |(i, r): (usize, &mut Replica)| {
            let mut stats = SweepStats::default();
            let cand = r.sweep(problem, betas[slot_of[i]], threshold, &mut stats);
            (cand, stats)
        };
        let results: Vec<(Option<Candidate>, SweepStats)> = match &pool {
            Some(pool) => pool.install(|| replicas.par_iter_mut().enumerate().map(sweep).collect()),
            None => replicas.iter_mut().enumerate().map(sweep).collect(),
        };
        for (i, (cand, stats)) in results.into_iter().enumerate() {
            slot_stats[slot_of[i]].merge(&stats);
            if let Some(c) = cand {
                if pending.as_ref().is_none_or(|b| c.score < b.score) {
                    pending = Some(c);
                }
            }
        }

        if cfg!(debug_assertions) {
            for r in &replicas {
                debug_assert!(r.is_consistent(), "replica score bookkeeping drifted");
            }
        }

        let mut rng = swap_rng(config.seed, repetitions);
        swap_phase(
            &mut slots,
            |r| replicas[r].score(),
            &mut ladder,
            Parity::of(repetitions),
            &mut rng,
        );

        if let Some(k) = config.swap_rate_interval {
            if k > 0 && repetitions % k == 0 {
                trace.swap_rates.push(SwapRateSnapshot {
                    repetition: repetitions,
                    rates: ladder.swap_rates(),
                });
            }
        }
    };

    let report = SynthesisReport {
        best_gate_count: best_network.as_ref().map(|n| n.len()),
        best_network,
        best_score,
        repetitions,
        elapsed: start.elapsed(),
        stop_reason,
        swap_rates: ladder.swap_rates(),
        acceptance_rates: slot_stats.iter().map(SweepStats::acceptance_rate).collect(),
        trace,
    };
    Ok((report, ladder))
}
