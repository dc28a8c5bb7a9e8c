//! Reference evaluator: one input vector at a time, scalar majority.
//!
//! Deliberately shares nothing with the bit-parallel cache so the two can
//! check each other.

use crate::netcore::{Literal, LogicNetwork, Operand};
use crate::truthtab::TruthTable;

fn literal_value(lit: Literal, x: &[bool], values: &[bool]) -> bool {
    let raw = match lit.operand() {
        Operand::Const(v) => v,
        Operand::Input(i) => x[i as usize],
        Operand::Gate(g) => values[g as usize],
    };
    if lit.is_inverted() {
        !raw
    } else {
        raw
    }
}

/// Output of `net` on the input vector `x` (`x[j]` is input `j`).
pub fn eval_single(net: &LogicNetwork, x: &[bool]) -> bool {
    assert_eq!(x.len(), net.n(), "input vector length");
    let mut values = Vec::with_capacity(net.len());
    for gate in net.gates() {
        let ones = gate
            .inputs
            .iter()
            .filter(|&&l| literal_value(l, x, &values))
            .count();
        values.push(ones >= 2);
    }
    literal_value(net.output(), x, &values)
}

pub fn eval_index(net: &LogicNetwork, index: usize) -> bool {
    let x: Vec<bool> = (0..net.n()).map(|j| (index >> j) & 1 == 1).collect();
    eval_single(net, &x)
}

/// Number of input vectors on which `net` disagrees with `tt`.
pub fn exhaustive_error(net: &LogicNetwork, tt: &TruthTable) -> u64 {
    assert_eq!(net.n(), tt.n());
    (0..tt.len())
        .filter(|&i| eval_index(net, i) != tt.bit(i))
        .count() as u64
}
