//! Majority networks, their bit-parallel evaluation and post-solution cleanup.

mod cache;
mod cleanup;
mod network;

pub use cache::{EvalCache, Recompute};
pub use cleanup::{cleanup, combined_score, combined_score_with, Cleaner};
pub use network::{Constraints, Gate, Literal, LogicNetwork, Operand, Violation, ViolationKind};

pub(crate) use network::{
    operand_from_index, operand_pool_size, random_gate_inputs, random_polarity,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::truthtab::TruthTable;

    fn lit_x(i: usize) -> Literal {
        Literal::input(i)
    }

    fn maj3() -> Arc<TruthTable> {
        Arc::new(TruthTable::majority(3).unwrap())
    }

    fn and_net() -> LogicNetwork {
        LogicNetwork::new(
            3,
            Constraints::new(1),
            vec![Gate::new([lit_x(0), lit_x(1), Literal::constant(false)])],
        )
        .unwrap()
    }

    #[test]
    fn single_majority_is_exact() {
        let net = LogicNetwork::new(
            3,
            Constraints::new(1),
            vec![Gate::new([lit_x(0), lit_x(1), lit_x(2)])],
        )
        .unwrap();
        let cache = EvalCache::evaluate_full(&net, maj3()).unwrap();
        assert_eq!(cache.energy(), 0);
        assert_eq!(combined_score(&net, &cache), 0.0);
    }

    #[test]
    fn and_gate_against_majority() {
        // Mismatches: minterms 5 = (1,0,1) and 6 = (0,1,1).
        let cache = EvalCache::evaluate_full(&and_net(), maj3()).unwrap();
        assert_eq!(cache.energy(), 2);
        let diff = cache.output_column()[0] ^ 0xE8;
        assert_eq!(diff, (1 << 5) | (1 << 6));
        assert_eq!(combined_score(&and_net(), &cache), 2.0);
    }

    #[test]
    fn weighted_energy_examples() {
        let cache = EvalCache::evaluate_full(&and_net(), maj3()).unwrap();
        assert_eq!(cache.weighted_energy(&[1.0; 8]).unwrap(), 2.0);
        assert_eq!(cache.weighted_energy(&[0.0; 8]).unwrap(), 0.0);
        let w = [1.0, 1.0, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0];
        assert_eq!(cache.weighted_energy(&w).unwrap(), 4.0);
        assert!(cache.weighted_energy(&[1.0; 4]).is_err());
    }

    #[test]
    fn weights_travel_with_the_target() {
        // Constant-1 output against MAJ-3 with all weight on minterm 0.
        let net = LogicNetwork::new(
            3,
            Constraints::new(1),
            vec![Gate::new([
                lit_x(0),
                Literal::constant(true),
                Literal::constant(false),
            ])],
        )
        .unwrap();
        let net = LogicNetwork::with_output(
            3,
            *net.constraints(),
            net.gates().to_vec(),
            Literal::constant(true),
        )
        .unwrap();
        let mut w = vec![0.0; 8];
        w[0] = 2.0;
        let target = Arc::new(TruthTable::majority(3).unwrap().with_weights(w).unwrap());
        let cache = EvalCache::evaluate_full(&net, target).unwrap();
        assert_eq!(cache.objective(), 2.0);

        // Don't-cares on every popcount-2 input: the AND gate agrees elsewhere.
        let w: Vec<f64> = (0..8u32)
            .map(|i| if i.count_ones() == 2 { 0.0 } else { 1.0 })
            .collect();
        let target = Arc::new(TruthTable::majority(3).unwrap().with_weights(w).unwrap());
        let cache = EvalCache::evaluate_full(&and_net(), target).unwrap();
        assert_eq!(cache.objective(), 0.0);
    }

    #[test]
    fn arity_mismatch() {
        let t = Arc::new(TruthTable::majority(5).unwrap());
        assert!(EvalCache::evaluate_full(&and_net(), t).is_err());
    }

    #[test]
    fn constant_zero_against_majority_nine() {
        let net = LogicNetwork::with_output(
            9,
            Constraints::new(1),
            vec![Gate::new([lit_x(0), lit_x(1), lit_x(2)])],
            Literal::constant(false),
        )
        .unwrap();
        let cache =
            EvalCache::evaluate_full(&net, Arc::new(TruthTable::majority(9).unwrap())).unwrap();
        assert_eq!(cache.energy(), 256);
    }

    #[test]
    fn changing_last_gate_touches_one_column() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let target = Arc::new(TruthTable::majority(5).unwrap());
        let mut net = LogicNetwork::random(5, Constraints::new(6), &mut rng);
        let mut cache = EvalCache::evaluate_full(&net, target).unwrap();
        let last = net.len() - 1;
        let g = *net.gate(last);
        net.set_gate(last, [g.inputs[1], g.inputs[0], g.inputs[2]]);
        let r = cache.recompute_from(&net, last).unwrap();
        assert_eq!(r.evaluated, 1);
        assert!(cache.recompute_from(&net, net.len()).is_err());
    }

    #[test]
    fn dead_gate_edit_keeps_error() {
        let target = maj3();
        let mut net = LogicNetwork::new(
            3,
            Constraints::new(2),
            vec![
                Gate::new([lit_x(0), lit_x(1), lit_x(2)]),
                Gate::new([lit_x(0), lit_x(1), lit_x(2)]),
            ],
        )
        .unwrap();
        // Gate 0 has no path to the output.
        let mut cache = EvalCache::evaluate_full(&net, target).unwrap();
        net.set_literal(0, 2, Literal::constant(true));
        let r = cache.recompute_from(&net, 0).unwrap();
        assert_eq!(r.error, 0);
        assert!(cache.is_consistent(&net));
    }

    #[test]
    fn journal_rollback_restores_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let target = Arc::new(TruthTable::majority(7).unwrap());
        let c = Constraints::new(12).with_inverters(true);
        let mut net = LogicNetwork::random(7, c, &mut rng);
        let mut cache = EvalCache::evaluate_full(&net, target).unwrap();
        let before = cache.clone();
        for _ in 0..200 {
            let g = rng.gen_range(0..net.len());
            let old = *net.gate(g);
            cache.begin();
            net.set_gate(g, random_gate_inputs(7, g, &c, &mut rng));
            cache.recompute_from(&net, g).unwrap();
            net.set_gate(g, old.inputs);
            cache.rollback();
            assert_eq!(cache.energy(), before.energy());
            assert!(cache.is_consistent(&net));
        }
    }

    #[test]
    fn cleanup_removes_dead_gate() {
        let net = LogicNetwork::new(
            3,
            Constraints::new(2),
            vec![
                Gate::new([lit_x(0), lit_x(1), Literal::constant(true)]),
                Gate::new([lit_x(0), lit_x(1), lit_x(2)]),
            ],
        )
        .unwrap();
        let (clean, q) = cleanup(&net);
        assert_eq!(q, 1);
        assert_eq!(clean.gates()[0], *net.gate(1));
        assert_eq!(clean.output(), Literal::gate(0));
    }

    #[test]
    fn cleanup_reduces_to_wire() {
        let net = LogicNetwork::new(
            3,
            Constraints::new(1),
            vec![Gate::new([
                lit_x(0),
                Literal::constant(false),
                Literal::constant(true),
            ])],
        )
        .unwrap();
        let target = maj3();
        let before = EvalCache::evaluate_full(&net, target.clone()).unwrap();
        let (clean, q) = cleanup(&net);
        assert_eq!(q, 0);
        assert_eq!(clean.output(), lit_x(0));
        let after = EvalCache::evaluate_full(&clean, target).unwrap();
        assert_eq!(before.output_column(), after.output_column());
    }

    #[test]
    fn cleanup_merges_duplicates_and_propagates() {
        // g1 duplicates g0 with permuted operands; g2 = <g0, g1, x2> = g0.
        let net = LogicNetwork::new(
            3,
            Constraints::new(3),
            vec![
                Gate::new([lit_x(0), lit_x(1), lit_x(2)]),
                Gate::new([lit_x(2), lit_x(0), lit_x(1)]),
                Gate::new([Literal::gate(0), Literal::gate(1), lit_x(2)]),
            ],
        )
        .unwrap();
        let (clean, q) = cleanup(&net);
        assert_eq!(q, 1);
        assert_eq!(clean.output(), Literal::gate(0));
    }

    #[test]
    fn cleanup_opposite_polarity_substitution() {
        // g1 = <g0, ~g0, x2> = x2 once both operands refer to g0.
        let c = Constraints::new(2).with_inverters(true);
        let net = LogicNetwork::new(
            3,
            c,
            vec![
                Gate::new([lit_x(0), lit_x(1), lit_x(2)]),
                Gate::new([Literal::gate(0), Literal::gate(0).negate(), lit_x(2)]),
            ],
        );
        // Structurally rejected: repeated operand.
        assert!(net.is_err());

        let net = LogicNetwork::new(
            3,
            c,
            vec![
                Gate::new([lit_x(0), Literal::constant(false), Literal::constant(true)]),
                Gate::new([Literal::gate(0).negate(), lit_x(0), lit_x(2)]),
            ],
        )
        .unwrap();
        let (clean, q) = cleanup(&net);
        assert_eq!((q, clean.output()), (0, lit_x(2)));
    }

    #[test]
    fn combined_score_of_exact_network_with_slack() {
        let net = LogicNetwork::new(
            3,
            Constraints::new(3),
            vec![
                Gate::new([lit_x(0), lit_x(1), Literal::constant(false)]),
                Gate::new([lit_x(2), lit_x(0), Literal::constant(true)]),
                Gate::new([lit_x(0), lit_x(1), lit_x(2)]),
            ],
        )
        .unwrap();
        let cache = EvalCache::evaluate_full(&net, maj3()).unwrap();
        assert_eq!(combined_score(&net, &cache), -2.0);
        // The working network is untouched.
        assert_eq!(net.len(), 3);
    }
}
