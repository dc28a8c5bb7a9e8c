//! Text formats: `.mig` networks, `.tt` truth tables, `.csv` traces and
//! ladder files.

mod ladder;
mod network;
mod trace;
mod truth;

pub use ladder::{emit_ladder, parse_ladder};
pub use network::{emit_network, parse_network};
pub use trace::{emit_trace, parse_trace, SwapRateSnapshot, Trace, TraceRow, TRACE_HEADER};
pub use truth::{emit_truth_table_file, parse_truth_table_file};
