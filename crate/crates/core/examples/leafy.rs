//! Leafy majority-7 with inverters: every gate keeps a primary input.

use ptsynth::formats::emit_network;
use ptsynth::prelude::*;

fn main() -> ptsynth::Result<()> {
    let c = Constraints::new(10).with_inverters(true).with_leafy(true);
    let problem = Problem::new(TruthTable::majority(7)?, c);
    let cal = calibrate_ladder(
        &problem,
        &CalibrationConfig {
            replicas: ptsynth::ptengine::ReplicaCount::Fixed(24),
            ..Default::default()
        },
    )?;
    let stop = StopCondition::repetitions(50_000).with_goal(0.0);
    let report = run(&problem, &cal.ladder, &RunConfig::new(stop, 5))?;
    match report.best_network {
        Some(net) => {
            assert!(net.gates().iter().all(Gate::has_primary_input));
            print!("{}", emit_network(&net));
        }
        None => println!("nothing exact yet, best energy {}", report.best_score),
    }
    Ok(())
}
