use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::moves::{self, MoveKind, MoveProposal};
use crate::netcore::{combined_score_with, Cleaner, EvalCache, LogicNetwork};

use super::Problem;

/// Metropolis attempts per gate input in one sweep.
pub const ATTEMPTS_PER_INPUT: usize = 5;

/// `min(1, exp(-beta * delta))`.
pub fn acceptance_probability(delta: f64, beta: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else {
        (-beta * delta).exp().min(1.0)
    }
}

/// Metropolis decision for a score change `delta` at inverse temperature `beta`.
pub fn metropolis_accept<R: Rng + ?Sized>(delta: f64, beta: f64, rng: &mut R) -> bool {
    if delta <= 0.0 {
        return true;
    }
    rng.gen::<f64>() < (-beta * delta).exp()
}

/// Per-sweep counters. `positive_deltas` is only filled when requested.
#[derive(Clone, Debug, Default)]
pub struct SweepStats {
    pub steps: u64,
    pub proposed: u64,
    pub accepted: u64,
    pub positive_deltas: Option<Vec<f64>>,
}

impl SweepStats {
    pub fn collecting() -> Self {
        SweepStats {
            positive_deltas: Some(Vec::new()),
            ..Default::default()
        }
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }

    pub fn merge(&mut self, other: &SweepStats) {
        self.steps += other.steps;
        self.proposed += other.proposed;
        self.accepted += other.accepted;
        if let (Some(a), Some(b)) = (&mut self.positive_deltas, &other.positive_deltas) {
            a.extend_from_slice(b);
        }
    }
}

/// Best state a replica passed through during one sweep, if it beat the
/// threshold handed to [`Replica::sweep`].
#[derive(Clone, Debug)]
pub struct Candidate {
    pub score: f64,
    /// Cleaned network, present once the replica is exact.
    pub network: Option<LogicNetwork>,
}

/// One copy of the system: a network, its evaluation cache and score, and
/// an independent random stream.
#[derive(Clone, Debug)]
pub struct Replica {
    net: LogicNetwork,
    cache: EvalCache,
    score: f64,
    rng: ChaCha8Rng,
    cleaner: Cleaner,
}

/// Random stream for replica `index` of a run seeded with `seed`.
pub fn replica_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index + 1);
    rng
}

impl Replica {
    /// Random initial network drawn from the replica's own stream.
    pub fn random(problem: &Problem, mut rng: ChaCha8Rng) -> Self {
        let net = LogicNetwork::random(problem.target.n(), problem.constraints, &mut rng);
        Self::from_network(problem, net, rng)
    }

    pub fn from_network(problem: &Problem, net: LogicNetwork, rng: ChaCha8Rng) -> Self {
        let cache = EvalCache::evaluate_full(&net, problem.target.clone())
            .expect("network arity matches the target");
        let mut cleaner = Cleaner::new();
        let score = combined_score_with(&mut cleaner, &net, &cache);
        Replica {
            net,
            cache,
            score,
            rng,
            cleaner,
        }
    }

    pub fn network(&self) -> &LogicNetwork {
        &self.net
    }

    pub fn cache(&self) -> &EvalCache {
        &self.cache
    }

    pub fn score(&self) -> f64 {
        self.score
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Applies `proposal` and keeps it with the Metropolis probability.
    /// Returns the acceptance decision and the score delta.
    pub fn step_with(&mut self, proposal: &MoveProposal, beta: f64) -> (bool, f64) {
        let new_score =
            moves::apply_scored(&mut self.net, &mut self.cache, &mut self.cleaner, proposal);
        let delta = new_score - self.score;
        if metropolis_accept(delta, beta, &mut self.rng) {
            moves::commit(&mut self.cache);
            self.score = new_score;
            (true, delta)
        } else {
            moves::revert(&mut self.net, &mut self.cache, proposal);
            (false, delta)
        }
    }

    /// One Metropolis step with a proposal drawn from the configured mix.
    /// Returns `None` when no legal move could be drawn.
    pub fn metropolis_step(&mut self, problem: &Problem, beta: f64) -> Option<bool> {
        let kind = problem.moves.sample(&mut self.rng);
        let proposal = moves::propose(kind, &self.net, &mut self.rng).ok()?;
        Some(self.step_with(&proposal, beta).0)
    }

    /// Five attempts per gate input, gate-major and slot-minor. Any state
    /// with a score below `threshold` is reported back as a [`Candidate`].
    pub fn sweep(
        &mut self,
        problem: &Problem,
        beta: f64,
        threshold: f64,
        stats: &mut SweepStats,
    ) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        let mut bar = threshold;
        for gate in 0..self.net.len() {
            for slot in 0..3 {
                for _ in 0..ATTEMPTS_PER_INPUT {
                    stats.steps += 1;
                    let proposal = match problem.moves.sample(&mut self.rng) {
                        MoveKind::ReassignOne => {
                            moves::propose_reassign_at(&self.net, gate, slot, &mut self.rng)
                        }
                        kind => moves::propose(kind, &self.net, &mut self.rng).ok(),
                    };
                    let Some(proposal) = proposal else { continue };
                    stats.proposed += 1;
                    let (accepted, delta) = self.step_with(&proposal, beta);
                    if delta > 0.0 {
                        if let Some(d) = stats.positive_deltas.as_mut() {
                            d.push(delta);
                        }
                    }
                    if accepted {
                        stats.accepted += 1;
                        if self.score < bar {
                            bar = self.score;
                            best = Some(self.candidate());
                        }
                    }
                }
            }
        }
        best
    }

    pub fn candidate(&mut self) -> Candidate {
        Candidate {
            score: self.score,
            network: (self.score <= 0.0).then(|| self.cleaner.cleanup(&self.net)),
        }
    }

    /// Recomputes the score from scratch and compares with the stored one.
    pub fn is_consistent(&self) -> bool {
        self.cache.is_consistent(&self.net)
            && crate::netcore::combined_score(&self.net, &self.cache) == self.score
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::moves::MoveMix;
    use crate::netcore::{Constraints, Gate, Literal};
    use crate::truthtab::TruthTable;

    fn problem(n: usize, p: usize) -> Problem {
        Problem {
            target: Arc::new(TruthTable::majority(n).unwrap()),
            constraints: Constraints::new(p),
            moves: MoveMix::default(),
        }
    }

    #[test]
    fn acceptance_formula() {
        assert_eq!(acceptance_probability(-3.0, 5.0), 1.0);
        assert_eq!(acceptance_probability(0.0, 5.0), 1.0);
        assert_eq!(acceptance_probability(7.0, 0.0), 1.0);
        assert!((acceptance_probability(2.0, 1.0) - 0.1353352832366127).abs() < 1e-15);
    }

    #[test]
    fn forced_delta_statistics() {
        let mut rng = replica_rng(99, 0);
        let trials = 100_000;
        let hits = (0..trials)
            .filter(|_| metropolis_accept(2.0, 1.0, &mut rng))
            .count();
        let rate = hits as f64 / trials as f64;
        assert!((rate - (-2.0f64).exp()).abs() < 0.01, "{rate}");
        assert!((0..1000).all(|_| metropolis_accept(-1.0, 50.0, &mut rng)));
        assert!((0..1000).all(|_| metropolis_accept(40.0, 0.0, &mut rng)));
    }

    #[test]
    fn sweep_step_counts() {
        for (p, steps) in [(13, 195), (1, 15)] {
            let pr = problem(5, p);
            let mut r = Replica::random(&pr, replica_rng(1, 0));
            let mut stats = SweepStats::default();
            r.sweep(&pr, 1.0, f64::NEG_INFINITY, &mut stats);
            assert_eq!(stats.steps, steps);
            assert!(r.is_consistent());
        }
    }

    #[test]
    fn frozen_local_minimum_rejects_everything() {
        // MAJ-3 implemented exactly with p = 1: every change raises the score.
        let pr = problem(3, 1);
        let net = LogicNetwork::new(
            3,
            pr.constraints,
            vec![Gate::new([
                Literal::input(0),
                Literal::input(1),
                Literal::input(2),
            ])],
        )
        .unwrap();
        let mut r = Replica::from_network(&pr, net, replica_rng(2, 0));
        let mut stats = SweepStats::default();
        r.sweep(&pr, 1e9, f64::NEG_INFINITY, &mut stats);
        assert_eq!(stats.accepted, 0);
        assert_eq!(stats.proposed, 15);
        assert_eq!(r.score(), 0.0);
    }

    #[test]
    fn infinite_temperature_accepts_everything() {
        let pr = problem(5, 6);
        let mut r = Replica::random(&pr, replica_rng(3, 0));
        let mut stats = SweepStats::collecting();
        r.sweep(&pr, 0.0, f64::NEG_INFINITY, &mut stats);
        assert_eq!(stats.accepted, stats.proposed);
        assert!(!stats.positive_deltas.unwrap().is_empty());
        assert!(r.is_consistent());
    }
}
