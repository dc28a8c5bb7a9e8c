use std::fmt;

use rand::Rng;

use crate::truthtab::MAX_INPUTS;

/// What a gate operand refers to.
///
/// The derived order (constants, then inputs, then gates) is the canonical
/// operand order used when comparing gate input multisets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operand {
    Const(bool),
    Input(u32),
    Gate(u32),
}

impl Operand {
    pub fn is_input(self) -> bool {
        matches!(self, Operand::Input(_))
    }

    pub fn is_const(self) -> bool {
        matches!(self, Operand::Const(_))
    }
}

/// An operand with a polarity flag.
///
/// Constants are never stored inverted: negating `0` yields `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    operand: Operand,
    inverted: bool,
}

impl Literal {
    pub fn new(operand: Operand, inverted: bool) -> Self {
        match operand {
            Operand::Const(v) => Literal {
                operand: Operand::Const(v ^ inverted),
                inverted: false,
            },
            _ => Literal { operand, inverted },
        }
    }

    pub fn input(i: usize) -> Self {
        Literal::new(Operand::Input(i as u32), false)
    }

    pub fn gate(g: usize) -> Self {
        Literal::new(Operand::Gate(g as u32), false)
    }

    pub fn constant(value: bool) -> Self {
        Literal::new(Operand::Const(value), false)
    }

    pub fn operand(self) -> Operand {
        self.operand
    }

    pub fn is_inverted(self) -> bool {
        self.inverted
    }

    /// Logical negation (flips the constant for constant literals).
    pub fn negate(self) -> Self {
        Literal::new(self.operand, !self.inverted)
    }

    /// Applies an extra inversion when `invert` is set.
    pub fn xor(self, invert: bool) -> Self {
        if invert {
            self.negate()
        } else {
            self
        }
    }

    pub fn gate_index(self) -> Option<usize> {
        match self.operand {
            Operand::Gate(g) => Some(g as usize),
            _ => None,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            f.write_str("~")?;
        }
        match self.operand {
            Operand::Const(v) => write!(f, "{}", v as u8),
            Operand::Input(i) => write!(f, "x{i}"),
            Operand::Gate(g) => write!(f, "g{g}"),
        }
    }
}

/// A majority-3 gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub inputs: [Literal; 3],
}

impl Gate {
    pub fn new(inputs: [Literal; 3]) -> Self {
        Gate { inputs }
    }

    pub fn has_primary_input(&self) -> bool {
        self.inputs.iter().any(|l| l.operand().is_input())
    }

    /// True when the three operands are pairwise distinct, ignoring polarity.
    pub fn has_distinct_operands(&self) -> bool {
        let [a, b, c] = self.inputs.map(Literal::operand);
        a != b && a != c && b != c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constraints {
    pub inverters_allowed: bool,
    pub leafy: bool,
    /// Gate budget `p`.
    pub max_nodes: usize,
}

impl Constraints {
    /// Plain majority gates, no leafiness requirement.
    pub fn new(max_nodes: usize) -> Self {
        Constraints {
            inverters_allowed: false,
            leafy: false,
            max_nodes,
        }
    }

    pub fn with_inverters(mut self, allowed: bool) -> Self {
        self.inverters_allowed = allowed;
        self
    }

    pub fn with_leafy(mut self, leafy: bool) -> Self {
        self.leafy = leafy;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    InputCount,
    TooManyGates,
    OperandOutOfRange,
    ForwardReference,
    DuplicateOperand,
    InverterNotAllowed,
    NotLeafy,
    BadOutput,
}

/// First structural problem found by [`LogicNetwork::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Gate position, `None` for network-level problems.
    pub gate: Option<usize>,
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gate {
            Some(g) => write!(f, "g{g}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// Topologically sorted list of majority-3 gates plus an output literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicNetwork {
    n: usize,
    gates: Vec<Gate>,
    output: Literal,
    constraints: Constraints,
}

impl LogicNetwork {
    /// Network whose output is the last gate.
    pub fn new(
        n: usize,
        constraints: Constraints,
        gates: Vec<Gate>,
    ) -> std::result::Result<Self, Violation> {
        let output = match gates.len() {
            0 => {
                return Err(Violation {
                    gate: None,
                    kind: ViolationKind::BadOutput,
                    message: "a network without gates needs an explicit output".into(),
                })
            }
            len => Literal::gate(len - 1),
        };
        Self::with_output(n, constraints, gates, output)
    }

    pub fn with_output(
        n: usize,
        constraints: Constraints,
        gates: Vec<Gate>,
        output: Literal,
    ) -> std::result::Result<Self, Violation> {
        let net = LogicNetwork {
            n,
            gates,
            output,
            constraints,
        };
        net.validate()?;
        Ok(net)
    }

    pub(crate) fn from_parts_unchecked(
        n: usize,
        constraints: Constraints,
        gates: Vec<Gate>,
        output: Literal,
    ) -> Self {
        LogicNetwork {
            n,
            gates,
            output,
            constraints,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, g: usize) -> &Gate {
        &self.gates[g]
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn output(&self) -> Literal {
        self.output
    }

    pub fn constraints(&self) -> &Constraints {
        &self.constraints
    }

    /// Replaces the constraint set without revalidating.
    pub fn set_constraints(&mut self, constraints: Constraints) {
        self.constraints = constraints;
    }

    pub(crate) fn set_literal(&mut self, gate: usize, slot: usize, lit: Literal) {
        self.gates[gate].inputs[slot] = lit;
    }

    pub(crate) fn set_gate(&mut self, gate: usize, inputs: [Literal; 3]) {
        self.gates[gate].inputs = inputs;
    }

    fn check_literal(&self, g: Option<usize>, lit: Literal) -> std::result::Result<(), Violation> {
        let fail = |kind, message: String| {
            Err(Violation {
                gate: g,
                kind,
                message,
            })
        };
        match lit.operand() {
            Operand::Const(_) => {}
            Operand::Input(i) => {
                if i as usize >= self.n {
                    return fail(
                        ViolationKind::OperandOutOfRange,
                        format!("input x{i} out of range for {} inputs", self.n),
                    );
                }
            }
            Operand::Gate(j) => {
                let limit = g.unwrap_or(self.gates.len());
                if j as usize >= limit {
                    let kind = if (j as usize) < self.gates.len() {
                        ViolationKind::ForwardReference
                    } else {
                        ViolationKind::OperandOutOfRange
                    };
                    return fail(
                        kind,
                        format!("reference to g{j} is not topologically earlier"),
                    );
                }
            }
        }
        if lit.is_inverted() && !self.constraints.inverters_allowed {
            return fail(
                ViolationKind::InverterNotAllowed,
                format!("inverted operand {lit} but inverters are disabled"),
            );
        }
        Ok(())
    }

    /// Checks every structural invariant under the active constraints.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        if self.n == 0 || self.n > MAX_INPUTS {
            return Err(Violation {
                gate: None,
                kind: ViolationKind::InputCount,
                message: format!("input count {} outside 1..={MAX_INPUTS}", self.n),
            });
        }
        if self.gates.len() > self.constraints.max_nodes {
            return Err(Violation {
                gate: None,
                kind: ViolationKind::TooManyGates,
                message: format!(
                    "{} gates exceed the budget of {}",
                    self.gates.len(),
                    self.constraints.max_nodes
                ),
            });
        }
        for (g, gate) in self.gates.iter().enumerate() {
            for &lit in &gate.inputs {
                self.check_literal(Some(g), lit)?;
            }
            if !gate.has_distinct_operands() {
                return Err(Violation {
                    gate: Some(g),
                    kind: ViolationKind::DuplicateOperand,
                    message: "operands must be pairwise distinct".into(),
                });
            }
            if self.constraints.leafy && !gate.has_primary_input() {
                return Err(Violation {
                    gate: Some(g),
                    kind: ViolationKind::NotLeafy,
                    message: "leafy networks need a primary input on every gate".into(),
                });
            }
        }
        self.check_literal(None, self.output).map_err(|mut v| {
            v.kind = ViolationKind::BadOutput;
            v.message = format!("output: {}", v.message);
            v
        })
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// A network of exactly `max_nodes` gates, each drawn uniformly from the
    /// operands legal at its position. The output is the last gate.
    pub fn random<R: Rng + ?Sized>(n: usize, constraints: Constraints, rng: &mut R) -> Self {
        assert!(constraints.max_nodes >= 1, "gate budget must be positive");
        assert!((1..=MAX_INPUTS).contains(&n));
        let gates = (0..constraints.max_nodes)
            .map(|g| Gate::new(random_gate_inputs(n, g, &constraints, rng)))
            .collect::<Vec<_>>();
        let output = Literal::gate(gates.len() - 1);
        let net = LogicNetwork {
            n,
            gates,
            output,
            constraints,
        };
        debug_assert!(net.is_valid());
        net
    }
}

/// Number of distinct operands visible to gate `g`: two constants, `n` inputs
/// and the `g` earlier gates.
pub(crate) fn operand_pool_size(n: usize, g: usize) -> usize {
    2 + n + g
}

pub(crate) fn operand_from_index(n: usize, k: usize) -> Operand {
    match k {
        0 => Operand::Const(false),
        1 => Operand::Const(true),
        k if k < 2 + n => Operand::Input((k - 2) as u32),
        k => Operand::Gate((k - 2 - n) as u32),
    }
}

pub(crate) fn random_polarity<R: Rng + ?Sized>(
    operand: Operand,
    constraints: &Constraints,
    rng: &mut R,
) -> Literal {
    // Both constants are already in the pool; inverting one would alias the other.
    let inverted = constraints.inverters_allowed && !operand.is_const() && rng.gen::<bool>();
    Literal::new(operand, inverted)
}

/// Three distinct operands for a gate at position `g`, honouring leafiness.
pub(crate) fn random_gate_inputs<R: Rng + ?Sized>(
    n: usize,
    g: usize,
    constraints: &Constraints,
    rng: &mut R,
) -> [Literal; 3] {
    let pool = operand_pool_size(n, g);
    loop {
        let a = rng.gen_range(0..pool);
        let mut b = rng.gen_range(0..pool - 1);
        if b >= a {
            b += 1;
        }
        let mut c = rng.gen_range(0..pool - 2);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if c >= lo {
            c += 1;
        }
        if c >= hi {
            c += 1;
        }
        let ops = [a, b, c].map(|k| operand_from_index(n, k));
        if constraints.leafy && !ops.iter().any(|o| o.is_input()) {
            continue;
        }
        return ops.map(|o| random_polarity(o, constraints, rng));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constants_normalize_under_negation() {
        assert_eq!(Literal::constant(false).negate(), Literal::constant(true));
        assert!(!Literal::constant(true).negate().is_inverted());
        assert!(Literal::input(2).negate().is_inverted());
    }

    #[test]
    fn random_single_gate_over_three_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let net = LogicNetwork::random(3, Constraints::new(1), &mut rng);
            assert_eq!(net.len(), 1);
            assert!(net.is_valid());
            for lit in net.gate(0).inputs {
                assert!(matches!(
                    lit.operand(),
                    Operand::Const(_) | Operand::Input(0..=2)
                ));
                assert!(!lit.is_inverted());
            }
        }
    }

    #[test]
    fn random_nine_input_budget_seventeen() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let net = LogicNetwork::random(9, Constraints::new(17), &mut rng);
        assert_eq!(net.len(), 17);
        assert!(net.is_valid());
        assert_eq!(net.output(), Literal::gate(16));
    }

    #[test]
    fn random_respects_topology() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut refs = 0;
        for _ in 0..10_000 {
            let net = LogicNetwork::random(3, Constraints::new(2), &mut rng);
            assert!(net.gate(0).inputs.iter().all(|l| l.gate_index().is_none()));
            if net.gate(1).inputs.iter().any(|l| l.gate_index() == Some(0)) {
                refs += 1;
            }
        }
        assert!(refs > 0);
    }

    #[test]
    fn random_leafy_and_inverters() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = Constraints::new(30).with_leafy(true).with_inverters(true);
        let mut saw_inverted = false;
        for _ in 0..50 {
            let net = LogicNetwork::random(5, c, &mut rng);
            assert!(net.is_valid());
            assert!(net.gates().iter().all(Gate::has_primary_input));
            saw_inverted |= net
                .gates()
                .iter()
                .flat_map(|g| g.inputs)
                .any(|l| l.is_inverted());
        }
        assert!(saw_inverted);
    }

    #[test]
    fn validity_violations() {
        let c = Constraints::new(2);
        let forward = LogicNetwork::new(
            3,
            c,
            vec![
                Gate::new([Literal::input(0), Literal::input(1), Literal::gate(1)]),
                Gate::new([Literal::input(0), Literal::input(1), Literal::input(2)]),
            ],
        );
        assert_eq!(forward.unwrap_err().kind, ViolationKind::ForwardReference);

        let inverted = LogicNetwork::new(
            3,
            c,
            vec![Gate::new([
                Literal::input(0).negate(),
                Literal::input(1),
                Literal::input(2),
            ])],
        );
        assert_eq!(
            inverted.unwrap_err().kind,
            ViolationKind::InverterNotAllowed
        );

        let dup = LogicNetwork::new(
            3,
            c.with_inverters(true),
            vec![Gate::new([
                Literal::input(0),
                Literal::input(1).negate(),
                Literal::input(1),
            ])],
        );
        assert_eq!(dup.unwrap_err().kind, ViolationKind::DuplicateOperand);

        let not_leafy = LogicNetwork::new(
            3,
            c.with_leafy(true),
            vec![
                Gate::new([Literal::input(0), Literal::input(1), Literal::input(2)]),
                Gate::new([
                    Literal::gate(0),
                    Literal::constant(false),
                    Literal::constant(true),
                ]),
            ],
        );
        assert_eq!(not_leafy.unwrap_err().kind, ViolationKind::NotLeafy);

        // <a, 0, 1> is structurally legal.
        assert!(LogicNetwork::new(
            3,
            c,
            vec![Gate::new([
                Literal::input(0),
                Literal::constant(false),
                Literal::constant(true)
            ])],
        )
        .is_ok());
    }
}
