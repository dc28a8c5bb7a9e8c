//! Parallel tempering over majority networks.
//!
//! `M` replicas each run one [`Replica::sweep`] per repetition at the inverse
//! temperature of their current slot; then adjacent slots of alternating
//! parity try to exchange states. Replicas live in a fixed vector and only
//! the slot assignment moves, so a run is bit-identical for any thread count.

mod calibrate;
mod ladder;
mod replica;
mod run;
mod swap;

use std::sync::Arc;

use crate::moves::MoveMix;
use crate::netcore::Constraints;
use crate::truthtab::TruthTable;

pub use calibrate::{
    calibrate_ladder, probe_swap_rates, solve_beta, warmup_deltas, Calibration, CalibrationConfig,
    ReplicaCount, ANCHOR_RATES,
};
pub use ladder::TemperatureLadder;
pub use replica::{
    acceptance_probability, metropolis_accept, replica_rng, Candidate, Replica, SweepStats,
    ATTEMPTS_PER_INPUT,
};
pub use run::{run, run_with_ladder_stats, RunConfig, StopCondition, StopReason, SynthesisReport};
pub use swap::{swap_phase, swap_probability, Parity};

/// What to synthesize and under which structural constraints.
#[derive(Clone, Debug)]
pub struct Problem {
    pub target: Arc<TruthTable>,
    pub constraints: Constraints,
    pub moves: MoveMix,
}

impl Problem {
    pub fn new(target: TruthTable, constraints: Constraints) -> Self {
        Problem {
            target: Arc::new(target),
            constraints,
            moves: MoveMix::default(),
        }
    }

    pub fn with_moves(mut self, moves: MoveMix) -> Self {
        self.moves = moves;
        self
    }

    pub fn max_nodes(&self) -> usize {
        self.constraints.max_nodes
    }
}
