//! Synthesis against a weighted target: the output is free wherever fewer
//! than two of x0..x3 are set.

use ptsynth::prelude::*;

fn main() -> ptsynth::Result<()> {
    let n = 4;
    // x0 AND x1 on the care set.
    let target = TruthTable::from_fn(n, |i| i & 0b11 == 0b11)?;
    let weights = (0..1usize << n)
        .map(|i| if i.count_ones() < 2 { 0.0 } else { 1.0 })
        .collect();
    let problem = Problem::new(target.with_weights(weights)?, Constraints::new(3));
    let ladder = TemperatureLadder::linear(0.05, 4.0, 12)?;

    let stop = StopCondition::repetitions(20_000).with_goal(-2.0);
    let report = run(&problem, &ladder, &RunConfig::new(stop, 3))?;
    println!(
        "best score {} after {} repetitions",
        report.best_score, report.repetitions
    );
    if let Some(net) = report.best_network {
        print!("{}", ptsynth::formats::emit_network(&net));
    }
    Ok(())
}
