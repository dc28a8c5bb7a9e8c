//! Local updates of a network: reassign one operand, swap operands between
//! two gates, or redraw a whole gate. Every proposal is valid by
//! construction and can be reverted exactly.

use rand::Rng;

use crate::error::{Error, Result};
use crate::netcore::{
    combined_score_with, operand_from_index, operand_pool_size, random_gate_inputs,
    random_polarity, Cleaner, EvalCache, Gate, Literal, LogicNetwork, Operand,
};

/// Rejected draws tolerated by [`propose_swap_between_gates`].
pub const SWAP_ATTEMPTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    ReassignOne,
    SwapBetweenGates,
    ReassignAll,
}

/// Relative weights of the three move kinds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoveMix {
    pub reassign_one: f64,
    pub swap_between_gates: f64,
    pub reassign_all: f64,
}

impl Default for MoveMix {
    fn default() -> Self {
        MoveMix {
            reassign_one: 1.0,
            swap_between_gates: 0.0,
            reassign_all: 0.0,
        }
    }
}

impl MoveMix {
    pub fn only_reassign_one(&self) -> bool {
        self.swap_between_gates == 0.0 && self.reassign_all == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let w = [
            self.reassign_one,
            self.swap_between_gates,
            self.reassign_all,
        ];
        if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) || w.iter().sum::<f64>() <= 0.0 {
            return Err(Error::invalid(
                "move weights must be non-negative with a positive sum",
            ));
        }
        Ok(())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> MoveKind {
        if self.only_reassign_one() {
            return MoveKind::ReassignOne;
        }
        let total = self.reassign_one + self.swap_between_gates + self.reassign_all;
        let u = rng.gen::<f64>() * total;
        if u < self.reassign_one {
            MoveKind::ReassignOne
        } else if u < self.reassign_one + self.swap_between_gates {
            MoveKind::SwapBetweenGates
        } else {
            MoveKind::ReassignAll
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveProposal {
    ReassignOne {
        gate: usize,
        slot: usize,
        old: Literal,
        new: Literal,
    },
    SwapBetweenGates {
        first: (usize, usize),
        second: (usize, usize),
        first_lit: Literal,
        second_lit: Literal,
    },
    ReassignAll {
        gate: usize,
        old: [Literal; 3],
        new: [Literal; 3],
    },
}

impl MoveProposal {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveProposal::ReassignOne { .. } => MoveKind::ReassignOne,
            MoveProposal::SwapBetweenGates { .. } => MoveKind::SwapBetweenGates,
            MoveProposal::ReassignAll { .. } => MoveKind::ReassignAll,
        }
    }
}

fn slot_requires_input(net: &LogicNetwork, gate: &Gate, slot: usize) -> bool {
    net.constraints().leafy
        && !(0..3)
            .filter(|&s| s != slot)
            .any(|s| gate.inputs[s].operand().is_input())
}

fn replacement_ok(gate: &Gate, slot: usize, candidate: Literal) -> bool {
    candidate != gate.inputs[slot]
        && (0..3)
            .filter(|&s| s != slot)
            .all(|s| gate.inputs[s].operand() != candidate.operand())
}

/// Every literal that may replace operand `slot` of `gate`.
pub fn legal_replacements(net: &LogicNetwork, gate: usize, slot: usize) -> Vec<Literal> {
    let g = net.gate(gate);
    let only_inputs = slot_requires_input(net, g, slot);
    let polarities: &[bool] = if net.constraints().inverters_allowed {
        &[false, true]
    } else {
        &[false]
    };
    let mut out = Vec::new();
    for k in 0..operand_pool_size(net.n(), gate) {
        let op = operand_from_index(net.n(), k);
        if only_inputs && !op.is_input() {
            continue;
        }
        for &inv in polarities {
            let lit = Literal::new(op, inv);
            if op.is_const() && inv {
                continue;
            }
            if replacement_ok(g, slot, lit) {
                out.push(lit);
            }
        }
    }
    out
}

/// Draws a replacement for a fixed operand slot, `None` when nothing is legal.
pub fn propose_reassign_at<R: Rng + ?Sized>(
    net: &LogicNetwork,
    gate: usize,
    slot: usize,
    rng: &mut R,
) -> Option<MoveProposal> {
    let g = net.gate(gate);
    let n = net.n();
    let only_inputs = slot_requires_input(net, g, slot);
    let pool = operand_pool_size(n, gate);
    let constraints = net.constraints();
    for attempt in 0.. {
        if attempt == 32 && legal_replacements(net, gate, slot).is_empty() {
            return None;
        }
        let op = if only_inputs {
            Operand::Input(rng.gen_range(0..n) as u32)
        } else {
            operand_from_index(n, rng.gen_range(0..pool))
        };
        let lit = random_polarity(op, constraints, rng);
        if replacement_ok(g, slot, lit) {
            return Some(MoveProposal::ReassignOne {
                gate,
                slot,
                old: g.inputs[slot],
                new: lit,
            });
        }
    }
    unreachable!()
}

/// Update 1: a new operand for a uniformly chosen gate input.
pub fn propose_reassign_one<R: Rng + ?Sized>(
    net: &LogicNetwork,
    rng: &mut R,
) -> Result<MoveProposal> {
    let positions = net.len() * 3;
    let start = rng.gen_range(0..positions);
    if let Some(p) = propose_reassign_at(net, start / 3, start % 3, rng) {
        return Ok(p);
    }
    // Rare: the chosen slot is stuck; take the next slot that is not.
    for k in 1..positions {
        let pos = (start + k) % positions;
        if let Some(p) = propose_reassign_at(net, pos / 3, pos % 3, rng) {
            return Ok(p);
        }
    }
    Err(Error::NoMoveAvailable)
}

fn gate_accepts(net: &LogicNetwork, gate: usize, slot: usize, lit: Literal) -> bool {
    if lit.gate_index().is_some_and(|j| j >= gate) {
        return false;
    }
    let mut g = *net.gate(gate);
    g.inputs[slot] = lit;
    g.has_distinct_operands() && (!net.constraints().leafy || g.has_primary_input())
}

/// Update 2: exchange one operand of each of two different gates.
pub fn propose_swap_between_gates<R: Rng + ?Sized>(
    net: &LogicNetwork,
    rng: &mut R,
) -> Result<MoveProposal> {
    if net.len() < 2 {
        return Err(Error::NoMoveAvailable);
    }
    for _ in 0..SWAP_ATTEMPTS {
        let a = rng.gen_range(0..net.len());
        let mut b = rng.gen_range(0..net.len() - 1);
        if b >= a {
            b += 1;
        }
        let (sa, sb) = (rng.gen_range(0..3), rng.gen_range(0..3));
        let (la, lb) = (net.gate(a).inputs[sa], net.gate(b).inputs[sb]);
        if la == lb || !gate_accepts(net, a, sa, lb) || !gate_accepts(net, b, sb, la) {
            continue;
        }
        return Ok(MoveProposal::SwapBetweenGates {
            first: (a, sa),
            second: (b, sb),
            first_lit: la,
            second_lit: lb,
        });
    }
    Err(Error::NoMoveAvailable)
}

/// Update 3: redraw all three operands of one gate.
pub fn propose_reassign_all<R: Rng + ?Sized>(
    net: &LogicNetwork,
    rng: &mut R,
) -> Result<MoveProposal> {
    let gate = rng.gen_range(0..net.len());
    Ok(propose_reassign_all_at(net, gate, rng))
}

pub fn propose_reassign_all_at<R: Rng + ?Sized>(
    net: &LogicNetwork,
    gate: usize,
    rng: &mut R,
) -> MoveProposal {
    MoveProposal::ReassignAll {
        gate,
        old: net.gate(gate).inputs,
        new: random_gate_inputs(net.n(), gate, net.constraints(), rng),
    }
}

pub fn propose<R: Rng + ?Sized>(
    kind: MoveKind,
    net: &LogicNetwork,
    rng: &mut R,
) -> Result<MoveProposal> {
    match kind {
        MoveKind::ReassignOne => propose_reassign_one(net, rng),
        MoveKind::SwapBetweenGates => propose_swap_between_gates(net, rng),
        MoveKind::ReassignAll => propose_reassign_all(net, rng),
    }
}

fn write(net: &mut LogicNetwork, proposal: &MoveProposal, forward: bool) -> ([usize; 2], usize) {
    match *proposal {
        MoveProposal::ReassignOne {
            gate,
            slot,
            old,
            new,
        } => {
            let (from, to) = if forward { (old, new) } else { (new, old) };
            debug_assert_eq!(net.gate(gate).inputs[slot], from, "stale proposal");
            net.set_literal(gate, slot, to);
            ([gate, gate], 1)
        }
        MoveProposal::SwapBetweenGates {
            first,
            second,
            first_lit,
            second_lit,
        } => {
            let (a, b) = if forward {
                (second_lit, first_lit)
            } else {
                (first_lit, second_lit)
            };
            net.set_literal(first.0, first.1, a);
            net.set_literal(second.0, second.1, b);
            ([first.0, second.0], 2)
        }
        MoveProposal::ReassignAll { gate, old, new } => {
            let (from, to) = if forward { (old, new) } else { (new, old) };
            debug_assert_eq!(net.gate(gate).inputs, from, "stale proposal");
            net.set_gate(gate, to);
            ([gate, gate], 1)
        }
    }
}

/// Applies `proposal`, updates the cache incrementally (journaled so it can
/// be reverted) and returns the new combined score.
pub fn apply_scored(
    net: &mut LogicNetwork,
    cache: &mut EvalCache,
    cleaner: &mut Cleaner,
    proposal: &MoveProposal,
) -> f64 {
    cache.begin();
    let (seeds, count) = write(net, proposal, true);
    cache.recompute_gates(net, &seeds[..count]);
    debug_assert!(net.is_valid());
    combined_score_with(cleaner, net, cache)
}

/// Applies `proposal` and returns the score delta (after minus before).
pub fn apply(net: &mut LogicNetwork, cache: &mut EvalCache, proposal: &MoveProposal) -> f64 {
    let mut cleaner = Cleaner::new();
    let before = combined_score_with(&mut cleaner, net, cache);
    apply_scored(net, cache, &mut cleaner, proposal) - before
}

/// Undoes the last applied proposal, restoring network and cache exactly.
pub fn revert(net: &mut LogicNetwork, cache: &mut EvalCache, proposal: &MoveProposal) {
    write(net, proposal, false);
    cache.rollback();
}

/// Keeps the last applied proposal.
pub fn commit(cache: &mut EvalCache) {
    cache.commit();
}
