//! Records a progress trace, writes it as CSV and reads it back.

use ptsynth::formats::{emit_trace, parse_trace};
use ptsynth::prelude::*;

fn main() -> ptsynth::Result<()> {
    let problem = Problem::new(TruthTable::majority(7)?, Constraints::new(10));
    let ladder = TemperatureLadder::linear(0.0, 3.0, 16)?;
    let mut config = RunConfig::new(StopCondition::repetitions(2_000).with_goal(-3.0), 11);
    config.swap_rate_interval = Some(50);
    let report = run(&problem, &ladder, &config)?;

    let csv = emit_trace(&report.trace);
    print!("{csv}");
    let back = parse_trace(&csv)?;
    assert_eq!(back.rows.len(), report.trace.rows.len());
    println!(
        "{} rows, {} swap-rate snapshots",
        back.rows.len(),
        back.swap_rates.len()
    );
    Ok(())
}
