//! `.tt` files: `#` comment lines, one line of table digits, and an optional
//! `weights: w0 w1 ...` line. The input count follows from the digit count.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::truthtab::{TruthTable, MAX_INPUTS};

fn infer_inputs(digits: &str, line: usize) -> Result<usize> {
    let bits = match digits.strip_prefix("0b") {
        Some(rest) => rest.len(),
        None => digits.strip_prefix("0x").unwrap_or(digits).len() * 4,
    };
    (1..=MAX_INPUTS)
        .find(|&n| 1usize << n == bits)
        .ok_or_else(|| Error::parse(line, 1, format!("{bits} table bits is not 2^n")))
}

pub fn parse_truth_table_file(text: &str) -> Result<TruthTable> {
    let mut table: Option<TruthTable> = None;
    let mut weights: Option<Vec<f64>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("weights:") {
            let Some(tt) = &table else {
                return Err(Error::parse(line_no, 1, "weights before the table line"));
            };
            if weights.is_some() {
                return Err(Error::parse(line_no, 1, "duplicate weights line"));
            }
            let mut w = Vec::with_capacity(tt.len());
            let mut col = raw.find("weights:").unwrap() + "weights:".len() + 1;
            for tok in rest.split(' ') {
                if !tok.is_empty() {
                    w.push(tok.parse::<f64>().map_err(|_| {
                        Error::parse(line_no, col, format!("invalid weight {tok:?}"))
                    })?);
                }
                col += tok.len() + 1;
            }
            weights = Some(w);
            continue;
        }
        if table.is_some() {
            return Err(Error::parse(line_no, 1, "unexpected second table line"));
        }
        let n = infer_inputs(line, line_no)?;
        table = Some(TruthTable::parse(line, n).map_err(|e| match e {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line: line_no,
                column,
                message,
            },
            e => e,
        })?);
    }
    let table = table.ok_or_else(|| Error::parse(1, 1, "no table line"))?;
    match weights {
        Some(w) => table.with_weights(w),
        None => Ok(table),
    }
}

pub fn emit_truth_table_file(tt: &TruthTable) -> String {
    let mut out = format!("{}\n", tt.to_text());
    if let Some(w) = tt.weights() {
        out.push_str("weights:");
        for x in w {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
    }
    out
}
