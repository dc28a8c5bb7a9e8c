//! Calibrates a ladder for majority-5 and measures its swap rates.

use ptsynth::formats::emit_ladder;
use ptsynth::prelude::*;
use ptsynth::ptengine::probe_swap_rates;

fn main() -> ptsynth::Result<()> {
    let problem = Problem::new(TruthTable::majority(5)?, Constraints::new(8));
    let cal = calibrate_ladder(&problem, &CalibrationConfig::default())?;
    println!("anchors {:?} from {} samples", cal.anchors, cal.samples);
    print!("{}", emit_ladder(&cal.ladder));

    let rates = probe_swap_rates(&problem, &cal.ladder, 1000, 1)?;
    let worst = rates.iter().cloned().fold(f64::INFINITY, f64::min);
    println!("lowest adjacent swap rate over 1000 repetitions: {worst:.3}");
    Ok(())
}
