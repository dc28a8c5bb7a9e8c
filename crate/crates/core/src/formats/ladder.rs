//! Ladder files: one inverse temperature per line, hottest first.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ptengine::TemperatureLadder;

pub fn emit_ladder(ladder: &TemperatureLadder) -> String {
    let mut out = format!(
        "# {} replicas, inverse temperatures hottest first\n",
        ladder.len()
    );
    for b in ladder.betas() {
        writeln!(out, "{b}").unwrap();
    }
    out
}

pub fn parse_ladder(text: &str) -> Result<TemperatureLadder> {
    let mut betas = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        betas.push(
            line.parse::<f64>()
                .map_err(|_| Error::parse(idx + 1, 1, format!("invalid beta {line:?}")))?,
        );
    }
    TemperatureLadder::new(betas)
}
