//! Progress traces as CSV: `repetition,best_q,best_score,elapsed_seconds`,
//! with `# swap_rates <repetition> <r0> <r1> ...` comment lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const TRACE_HEADER: &str = "repetition,best_q,best_score,elapsed_seconds";

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub repetition: u64,
    pub best_q: usize,
    pub best_score: f64,
    /// Wall time; `None` writes an empty field so traces can be compared
    /// byte for byte.
    pub elapsed_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwapRateSnapshot {
    pub repetition: u64,
    pub rates: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trace {
    pub rows: Vec<TraceRow>,
    pub swap_rates: Vec<SwapRateSnapshot>,
}

pub fn emit_trace(trace: &Trace) -> String {
    let mut out = format!("{TRACE_HEADER}\n");
    let mut snaps = trace.swap_rates.iter().peekable();
    for row in &trace.rows {
        while let Some(s) = snaps.next_if(|s| s.repetition < row.repetition) {
            write_snapshot(&mut out, s);
        }
        write!(out, "{},{},{},", row.repetition, row.best_q, row.best_score).unwrap();
        if let Some(t) = row.elapsed_seconds {
            write!(out, "{t}").unwrap();
        }
        out.push('\n');
    }
    for s in snaps {
        write_snapshot(&mut out, s);
    }
    out
}

fn write_snapshot(out: &mut String, s: &SwapRateSnapshot) {
    write!(out, "# swap_rates {}", s.repetition).unwrap();
    for r in &s.rates {
        write!(out, " {r}").unwrap();
    }
    out.push('\n');
}

pub fn parse_trace(text: &str) -> Result<Trace> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == TRACE_HEADER => {}
        _ => {
            return Err(Error::parse(
                1,
                1,
                format!("expected header `{TRACE_HEADER}`"),
            ))
        }
    }
    let mut trace = Trace::default();
    for (idx, line) in lines {
        let row_no = idx + 1;
        let bad = |msg: String| Error::parse(row_no, 1, msg);
        if let Some(rest) = line.strip_prefix('#') {
            let mut toks = rest.split_whitespace();
            if toks.next() == Some("swap_rates") {
                let repetition = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("swap_rates needs a repetition".into()))?;
                let rates = toks
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| bad(format!("invalid rate {t:?}")))
                    })
                    .collect::<Result<_>>()?;
                trace
                    .swap_rates
                    .push(SwapRateSnapshot { repetition, rates });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(format!("expected 4 fields, got {}", fields.len())));
        }
        let repetition: u64 = fields[0]
            .parse()
            .map_err(|_| bad(format!("invalid repetition {:?}", fields[0])))?;
        let best_q = fields[1]
            .parse()
            .map_err(|_| bad(format!("invalid best_q {:?}", fields[1])))?;
        let best_score = fields[2]
            .parse()
            .map_err(|_| bad(format!("invalid best_score {:?}", fields[2])))?;
        let elapsed_seconds = match fields[3] {
            "" => None,
            t => Some(
                t.parse()
                    .map_err(|_| bad(format!("invalid elapsed time {t:?}")))?,
            ),
        };
        if let Some(prev) = trace.rows.last() {
            if repetition <= prev.repetition {
                return Err(bad("repetitions must strictly increase".into()));
            }
        }
        trace.rows.push(TraceRow {
            repetition,
            best_q,
            best_score,
            elapsed_seconds,
        });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_trace_is_header_only() {
        let text = emit_trace(&Trace::default());
        assert_eq!(text, format!("{TRACE_HEADER}\n"));
        assert_eq!(parse_trace(&text).unwrap(), Trace::default());
    }

    #[test]
    fn one_row() {
        let trace = Trace {
            rows: vec![TraceRow {
                repetition: 12,
                best_q: 8,
                best_score: 3.0,
                elapsed_seconds: Some(0.25),
            }],
            swap_rates: vec![],
        };
        let text = emit_trace(&trace);
        assert_eq!(text.lines().count(), 2);
        assert_eq!(text.lines().nth(1), Some("12,8,3,0.25"));
    }

    #[test]
    fn synthetic_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut rep = 0;
        let mut trace = Trace::default();
        for i in 0..1000 {
            rep += rng.gen_range(1..50u64);
            trace.rows.push(TraceRow {
                repetition: rep,
                best_q: 40 - i / 25,
                best_score: 1000.0 - i as f64 * rng.gen::<f64>(),
                elapsed_seconds: if i % 7 == 0 {
                    None
                } else {
                    Some(rng.gen::<f64>() * 100.0)
                },
            });
            if i % 100 == 0 {
                trace.swap_rates.push(SwapRateSnapshot {
                    repetition: rep,
                    rates: (0..5).map(|_| rng.gen()).collect(),
                });
            }
        }
        let text = emit_trace(&trace);
        let back = parse_trace(&text).unwrap();
        assert_eq!(back, trace);
        assert_eq!(emit_trace(&back), text);
    }

    #[test]
    fn malformed_rows() {
        let text = format!("{TRACE_HEADER}\n1,2,3,\n2,x,3,\n");
        assert!(matches!(
            parse_trace(&text),
            Err(Error::Parse { line: 3, .. })
        ));
        let text = format!("{TRACE_HEADER}\n5,2,3,\n5,2,2,\n");
        assert!(matches!(
            parse_trace(&text),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_trace("nope\n").is_err());
    }
}
