//! Synthesis of small majority networks by parallel tempering.
//!
//! The search starts from a random network of at most `p` majority-3 gates
//! (optionally with inverted operands) and drives its error against a target
//! truth table to zero with replica-exchange Monte Carlo. Once a replica is
//! exact, its energy becomes `q - p` where `q` is the gate count after
//! [`netcore::cleanup`], so the colder replicas keep shrinking the network.
//!
//! ```
//! use ptsynth::prelude::*;
//!
//! let target = std::sync::Arc::new(TruthTable::majority(3).unwrap());
//! let net = LogicNetwork::new(
//!     3,
//!     Constraints::new(1),
//!     vec![Gate::new([Literal::input(0), Literal::input(1), Literal::input(2)])],
//! )
//! .unwrap();
//! let cache = EvalCache::evaluate_full(&net, target).unwrap();
//! assert_eq!(cache.energy(), 0);
//! ```
//!
//! The `examples/` directory holds one runnable program per capability:
//! synthesis, verification of published networks, cleanup, ladder
//! calibration, don't-care targets and trace handling.

pub mod cli;
pub mod error;
pub mod formats;
pub mod moves;
pub mod netcore;
pub mod oracle;
pub mod ptengine;
pub mod truthtab;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::moves::{MoveKind, MoveMix, MoveProposal};
    pub use crate::netcore::{
        cleanup, combined_score, Constraints, EvalCache, Gate, Literal, LogicNetwork, Operand,
    };
    pub use crate::ptengine::{
        calibrate_ladder, run, CalibrationConfig, Problem, RunConfig, StopCondition,
        SynthesisReport, TemperatureLadder,
    };
    pub use crate::truthtab::TruthTable;
}
