//! Finds a four-gate majority-5 network from an eight-gate budget.
//!
//!     cargo run --release --example synth_majority5 [seed]

use ptsynth::formats::emit_network;
use ptsynth::prelude::*;

fn main() -> ptsynth::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let problem = Problem::new(TruthTable::majority(5)?, Constraints::new(8));
    let ladder = calibrate_ladder(
        &problem,
        &CalibrationConfig {
            seed,
            ..Default::default()
        },
    )?
    .ladder;

    // Goal q = 4 with p = 8 means score -4.
    let stop = StopCondition::repetitions(100_000).with_goal(-4.0);
    let report = run(&problem, &ladder, &RunConfig::new(stop, seed))?;

    println!(
        "{} replicas, {} repetitions, {:?}",
        ladder.len(),
        report.repetitions,
        report.stop_reason
    );
    match report.best_network {
        Some(net) => print!("{}", emit_network(&net)),
        None => println!("no exact network, best energy {}", report.best_score),
    }
    Ok(())
}
