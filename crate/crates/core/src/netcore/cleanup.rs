use super::cache::EvalCache;
use super::network::{Gate, Literal, LogicNetwork, Operand};

/// Reduces a gate whose operands make it trivial to the literal it computes.
///
/// Two constants decide the gate (`<a,0,0> = 0`, `<a,1,1> = 1`,
/// `<a,0,1> = a`); a repeated operand decides it too (`<a,b,b> = b`,
/// `<a,b,~b> = a`).
fn reduce(ins: &[Literal; 3]) -> Option<Literal> {
    const PAIRS: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    for (i, j, k) in PAIRS {
        let (a, b) = (ins[i], ins[j]);
        if a.operand() == b.operand() || (is_const(a) && is_const(b)) {
            if a == b {
                return Some(a);
            }
            // Opposite polarities of one signal, or the constants 0 and 1.
            return Some(ins[k]);
        }
    }
    None
}

fn is_const(l: Literal) -> bool {
    matches!(l.operand(), Operand::Const(_))
}

/// Reusable buffers for cleanup; the search calls it on every exact step.
#[derive(Debug, Default, Clone)]
pub struct Cleaner {
    subst: Vec<Literal>,
    gates: Vec<[Literal; 3]>,
    kept: Vec<bool>,
    seen: Vec<([Literal; 3], u32)>,
    live: Vec<bool>,
    stack: Vec<usize>,
    renumber: Vec<u32>,
}

impl Cleaner {
    pub fn new() -> Self {
        Self::default()
    }

    /// One forward pass of constant propagation, trivial-gate reduction and
    /// duplicate merging, followed by liveness from the output. Returns the
    /// remapped output literal; survivors are marked in `self.live`.
    fn pass(&mut self, net: &LogicNetwork) -> Literal {
        let len = net.len();
        self.subst.clear();
        self.gates.clear();
        self.kept.clear();
        self.seen.clear();
        let remap = |subst: &[Literal], l: Literal| match l.operand() {
            Operand::Gate(j) => subst[j as usize].xor(l.is_inverted()),
            _ => l,
        };
        for g in 0..len {
            let ins = net.gate(g).inputs.map(|l| remap(&self.subst, l));
            self.gates.push(ins);
            if let Some(lit) = reduce(&ins) {
                self.subst.push(lit);
                self.kept.push(false);
                continue;
            }
            let mut key = ins;
            key.sort_unstable();
            match self.seen.iter().find(|(k, _)| *k == key) {
                Some(&(_, prev)) => {
                    self.subst.push(Literal::gate(prev as usize));
                    self.kept.push(false);
                }
                None => {
                    self.seen.push((key, g as u32));
                    self.subst.push(Literal::gate(g));
                    self.kept.push(true);
                }
            }
        }
        let output = remap(&self.subst, net.output());

        self.live.clear();
        self.live.resize(len, false);
        self.stack.clear();
        if let Some(g) = output.gate_index() {
            self.stack.push(g);
        }
        while let Some(g) = self.stack.pop() {
            if self.live[g] {
                continue;
            }
            debug_assert!(self.kept[g]);
            self.live[g] = true;
            for l in self.gates[g] {
                if let Some(j) = l.gate_index() {
                    if !self.live[j] {
                        self.stack.push(j);
                    }
                }
            }
        }
        output
    }

    /// Gate count `q` after cleanup, without building the cleaned network.
    pub fn gate_count(&mut self, net: &LogicNetwork) -> usize {
        self.pass(net);
        self.live.iter().filter(|&&b| b).count()
    }

    pub fn cleanup(&mut self, net: &LogicNetwork) -> LogicNetwork {
        let mut current = net.clone();
        loop {
            let next = self.rebuild(&current);
            if next == current {
                debug_assert!(next.is_valid());
                return next;
            }
            current = next;
        }
    }

    fn rebuild(&mut self, net: &LogicNetwork) -> LogicNetwork {
        let output = self.pass(net);
        self.renumber.clear();
        let mut next = 0u32;
        for &live in &self.live {
            self.renumber.push(next);
            if live {
                next += 1;
            }
        }
        let renumber = |r: &[u32], l: Literal| match l.operand() {
            Operand::Gate(j) => Literal::gate(r[j as usize] as usize).xor(l.is_inverted()),
            _ => l,
        };
        let gates = (0..net.len())
            .filter(|&g| self.live[g])
            .map(|g| Gate::new(self.gates[g].map(|l| renumber(&self.renumber, l))))
            .collect();
        let output = renumber(&self.renumber, output);
        LogicNetwork::from_parts_unchecked(net.n(), *net.constraints(), gates, output)
    }
}

/// Removes trivial, duplicate and unreachable gates; returns the simplified
/// network and its gate count `q`. The output function is unchanged.
pub fn cleanup(net: &LogicNetwork) -> (LogicNetwork, usize) {
    let cleaned = Cleaner::new().cleanup(net);
    let q = cleaned.len();
    (cleaned, q)
}

/// Search score: the (weighted) error while inexact, `q - p <= 0` once exact.
pub fn combined_score(net: &LogicNetwork, cache: &EvalCache) -> f64 {
    combined_score_with(&mut Cleaner::new(), net, cache)
}

pub fn combined_score_with(cleaner: &mut Cleaner, net: &LogicNetwork, cache: &EvalCache) -> f64 {
    let e = cache.objective();
    if e > 0.0 {
        e
    } else {
        cleaner.gate_count(net) as f64 - net.constraints().max_nodes as f64
    }
}
