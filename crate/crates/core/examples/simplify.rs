//! Cleanup on a hand-built network with a constant gate, a duplicate and a
//! dead gate.

use ptsynth::formats::emit_network;
use ptsynth::prelude::*;

fn main() -> ptsynth::Result<()> {
    let x = Literal::input;
    let gates = vec![
        Gate::new([x(0), x(1), x(2)]),
        // Same multiset as g0.
        Gate::new([x(2), x(0), x(1)]),
        // MAJ(a, 0, 1) = a.
        Gate::new([
            Literal::gate(1),
            Literal::constant(false),
            Literal::constant(true),
        ]),
        // Never reaches the output.
        Gate::new([x(0), x(1), Literal::constant(false)]),
        Gate::new([Literal::gate(0), Literal::gate(2), x(3)]),
    ];
    let constraints = Constraints::new(gates.len());
    let net = LogicNetwork::with_output(4, constraints, gates, Literal::gate(4))?;

    print!("before:\n{}", emit_network(&net));
    let (clean, q) = cleanup(&net);
    print!("after ({q} gates):\n{}", emit_network(&clean));
    Ok(())
}
