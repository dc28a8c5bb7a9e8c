use std::sync::Arc;

use crate::error::{Error, Result};
use crate::truthtab::{column_mask, column_words, TruthTable};

use super::network::{Literal, LogicNetwork, Operand};

/// Bit-parallel simulation state: one packed column per gate over all `2^n`
/// input vectors, plus the Hamming distance of the output to the target.
#[derive(Clone, Debug)]
pub struct EvalCache {
    n: usize,
    words: usize,
    mask: u64,
    target: Arc<TruthTable>,
    inputs: Vec<u64>,
    zeros: Vec<u64>,
    cols: Vec<u64>,
    output: Literal,
    error: u64,
    tmp: Vec<u64>,
    dirty: Vec<bool>,
    journal: Journal,
}

#[derive(Clone, Debug, Default)]
struct Journal {
    active: bool,
    gates: Vec<u32>,
    saved: Vec<u64>,
    error: u64,
}

/// Outcome of an incremental update.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Recompute {
    /// Columns evaluated, including ones that came out unchanged.
    pub evaluated: usize,
    /// Columns whose contents changed.
    pub changed: usize,
    pub error: u64,
}

/// Periodic column of input `j`.
fn input_column(j: usize, words: usize, mask: u64) -> Vec<u64> {
    const PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    (0..words)
        .map(|w| {
            let v = if j < 6 {
                PATTERNS[j]
            } else if (w >> (j - 6)) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
            v & mask
        })
        .collect()
}

#[inline]
fn resolve<'a>(
    lit: Literal,
    inputs: &'a [u64],
    zeros: &'a [u64],
    cols: &'a [u64],
    words: usize,
    mask: u64,
) -> (&'a [u64], u64) {
    let flip = if lit.is_inverted() { mask } else { 0 };
    match lit.operand() {
        Operand::Const(false) => (zeros, 0),
        Operand::Const(true) => (zeros, mask),
        Operand::Input(i) => {
            let i = i as usize;
            (&inputs[i * words..(i + 1) * words], flip)
        }
        Operand::Gate(g) => {
            let g = g as usize;
            (&cols[g * words..(g + 1) * words], flip)
        }
    }
}

impl EvalCache {
    pub fn evaluate_full(net: &LogicNetwork, target: Arc<TruthTable>) -> Result<Self> {
        if target.n() != net.n() {
            return Err(Error::invalid(format!(
                "network has {} inputs but target has {}",
                net.n(),
                target.n()
            )));
        }
        let n = net.n();
        let words = column_words(n);
        let mask = column_mask(n);
        let inputs = (0..n).flat_map(|j| input_column(j, words, mask)).collect();
        let mut cache = EvalCache {
            n,
            words,
            mask,
            target,
            inputs,
            zeros: vec![0; words],
            cols: Vec::new(),
            output: net.output(),
            error: 0,
            tmp: vec![0; words],
            dirty: Vec::new(),
            journal: Journal::default(),
        };
        cache.refresh(net);
        Ok(cache)
    }

    /// Recomputes every column from scratch, resizing for `net`.
    pub fn refresh(&mut self, net: &LogicNetwork) {
        assert_eq!(net.n(), self.n);
        self.cols.clear();
        self.cols.resize(net.len() * self.words, 0);
        self.dirty.clear();
        self.dirty.resize(net.len(), false);
        self.journal = Journal::default();
        for g in 0..net.len() {
            self.eval_into_tmp(net, g);
            let w = self.words;
            self.cols[g * w..(g + 1) * w].copy_from_slice(&self.tmp);
        }
        self.output = net.output();
        self.error = self.compute_error(self.output);
    }

    fn eval_into_tmp(&mut self, net: &LogicNetwork, g: usize) {
        let words = self.words;
        let [la, lb, lc] = net.gate(g).inputs;
        let (a, fa) = resolve(la, &self.inputs, &self.zeros, &self.cols, words, self.mask);
        let (b, fb) = resolve(lb, &self.inputs, &self.zeros, &self.cols, words, self.mask);
        let (c, fc) = resolve(lc, &self.inputs, &self.zeros, &self.cols, words, self.mask);
        for (w, out) in self.tmp.iter_mut().enumerate() {
            let (x, y, z) = (a[w] ^ fa, b[w] ^ fb, c[w] ^ fc);
            *out = (x & y) | (z & (x | y));
        }
    }

    fn compute_error(&self, output: Literal) -> u64 {
        let (col, flip) = resolve(
            output,
            &self.inputs,
            &self.zeros,
            &self.cols,
            self.words,
            self.mask,
        );
        col.iter()
            .zip(self.target.words())
            .map(|(&c, &t)| ((c ^ flip) ^ t).count_ones() as u64)
            .sum()
    }

    /// Updates the cache after exactly gate `changed` was modified.
    pub fn recompute_from(&mut self, net: &LogicNetwork, changed: usize) -> Result<Recompute> {
        if changed >= net.len() {
            return Err(Error::invalid(format!(
                "gate index {changed} out of range for {} gates",
                net.len()
            )));
        }
        Ok(self.recompute_gates(net, &[changed]))
    }

    /// Updates the cache after all gates in `seeds` were modified. Columns are
    /// re-evaluated in topological order; fanout of a gate whose column came
    /// out bit-identical is not revisited.
    pub fn recompute_gates(&mut self, net: &LogicNetwork, seeds: &[usize]) -> Recompute {
        debug_assert_eq!(self.cols.len(), net.len() * self.words);
        debug_assert_eq!(self.output, net.output());
        let Some(&start) = seeds.iter().min() else {
            return Recompute {
                evaluated: 0,
                changed: 0,
                error: self.error,
            };
        };
        let words = self.words;
        let mut evaluated = 0;
        let mut changed = 0;
        for g in start..net.len() {
            let seeded = seeds.contains(&g);
            let stale = seeded
                || net
                    .gate(g)
                    .inputs
                    .iter()
                    .any(|l| l.gate_index().is_some_and(|j| self.dirty[j]));
            if !stale {
                continue;
            }
            evaluated += 1;
            self.eval_into_tmp(net, g);
            let col = &mut self.cols[g * words..(g + 1) * words];
            if col != self.tmp.as_slice() {
                if self.journal.active {
                    self.journal.gates.push(g as u32);
                    self.journal.saved.extend_from_slice(col);
                }
                col.copy_from_slice(&self.tmp);
                self.dirty[g] = true;
                changed += 1;
            }
        }
        let output_dirty = net.output().gate_index().is_some_and(|j| self.dirty[j]);
        for d in &mut self.dirty[start..] {
            *d = false;
        }
        if output_dirty {
            self.error = self.compute_error(net.output());
        }
        Recompute {
            evaluated,
            changed,
            error: self.error,
        }
    }

    /// Starts recording overwritten columns so [`EvalCache::rollback`] can
    /// restore them.
    pub fn begin(&mut self) {
        self.journal.active = true;
        self.journal.gates.clear();
        self.journal.saved.clear();
        self.journal.error = self.error;
    }

    pub fn commit(&mut self) {
        self.journal.active = false;
        self.journal.gates.clear();
        self.journal.saved.clear();
    }

    /// Restores every column overwritten since [`EvalCache::begin`].
    pub fn rollback(&mut self) {
        assert!(self.journal.active, "rollback without begin");
        let words = self.words;
        for (k, &g) in self.journal.gates.iter().enumerate().rev() {
            let g = g as usize;
            self.cols[g * words..(g + 1) * words]
                .copy_from_slice(&self.journal.saved[k * words..(k + 1) * words]);
        }
        self.error = self.journal.error;
        self.commit();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> &Arc<TruthTable> {
        &self.target
    }

    pub fn words_per_column(&self) -> usize {
        self.words
    }

    /// Number of input vectors on which the output disagrees with the target.
    pub fn energy(&self) -> u64 {
        self.error
    }

    /// Sum of `weights[x]` over mismatching inputs `x`.
    pub fn weighted_energy(&self, weights: &[f64]) -> Result<f64> {
        if weights.len() != 1 << self.n {
            return Err(Error::invalid(format!(
                "expected {} weights, got {}",
                1usize << self.n,
                weights.len()
            )));
        }
        let (col, flip) = resolve(
            self.output,
            &self.inputs,
            &self.zeros,
            &self.cols,
            self.words,
            self.mask,
        );
        let mut total = 0.0;
        for (w, (&c, &t)) in col.iter().zip(self.target.words()).enumerate() {
            let mut diff = (c ^ flip) ^ t;
            while diff != 0 {
                let b = diff.trailing_zeros() as usize;
                total += weights[w * 64 + b];
                diff &= diff - 1;
            }
        }
        Ok(total)
    }

    /// Search objective: the weighted energy when the target carries weights,
    /// the plain mismatch count otherwise.
    pub fn objective(&self) -> f64 {
        match self.target.weights() {
            None => self.error as f64,
            Some(w) => self
                .weighted_energy(w)
                .expect("target weights sized to the table"),
        }
    }

    pub fn gate_column(&self, g: usize) -> &[u64] {
        &self.cols[g * self.words..(g + 1) * self.words]
    }

    pub fn literal_column(&self, lit: Literal) -> Vec<u64> {
        let (col, flip) = resolve(
            lit,
            &self.inputs,
            &self.zeros,
            &self.cols,
            self.words,
            self.mask,
        );
        col.iter().map(|&c| c ^ flip).collect()
    }

    pub fn output(&self) -> Literal {
        self.output
    }

    pub fn output_column(&self) -> Vec<u64> {
        self.literal_column(self.output)
    }

    /// Value of literal `lit` on input vector `x`.
    pub fn literal_bit(&self, lit: Literal, x: usize) -> bool {
        let (col, flip) = resolve(
            lit,
            &self.inputs,
            &self.zeros,
            &self.cols,
            self.words,
            self.mask,
        );
        ((col[x / 64] ^ flip) >> (x % 64)) & 1 == 1
    }

    /// True when the cached columns match a from-scratch evaluation.
    pub fn is_consistent(&self, net: &LogicNetwork) -> bool {
        match EvalCache::evaluate_full(net, self.target.clone()) {
            Ok(fresh) => fresh.cols == self.cols && fresh.error == self.error,
            Err(_) => false,
        }
    }
}
