//! Parses the bundled majority networks and checks each against its target.

use std::sync::Arc;

use ptsynth::formats::parse_network;
use ptsynth::prelude::*;

const FIXTURES: [&str; 8] = [
    "maj9",
    "maj11",
    "maj13",
    "maj9_inv",
    "maj11_inv",
    "maj13_inv",
    "maj9_leafy",
    "maj9_leafy_inv",
];

fn main() -> ptsynth::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in FIXTURES {
        let text = std::fs::read_to_string(format!("{dir}/{name}.mig"))?;
        let net = parse_network(&text)?;
        let target = Arc::new(TruthTable::majority(net.n())?);
        let cache = EvalCache::evaluate_full(&net, target)?;
        println!(
            "{name:>15}: n={:<2} gates={:<2} energy={} valid={}",
            net.n(),
            net.len(),
            cache.energy(),
            net.is_valid()
        );
    }
    Ok(())
}
