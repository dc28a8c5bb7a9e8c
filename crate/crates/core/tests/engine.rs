use ptsynth::formats::{emit_network, emit_trace};
use ptsynth::prelude::*;
use ptsynth::ptengine::{ReplicaCount, StopReason};

fn problem(n: usize, p: usize) -> Problem {
    Problem::new(TruthTable::majority(n).unwrap(), Constraints::new(p))
}

fn ladder(problem: &Problem, m: usize) -> TemperatureLadder {
    let cfg = CalibrationConfig {
        replicas: ReplicaCount::Fixed(m),
        seed: 9,
        ..Default::default()
    };
    calibrate_ladder(problem, &cfg).unwrap().ladder
}

#[test]
fn thread_count_does_not_change_results() {
    let pr = problem(7, 10);
    let l = ladder(&pr, 16);
    let go = |threads| {
        let cfg = RunConfig::new(StopCondition::repetitions(150), 21)
            .with_threads(threads)
            .without_timing();
        run(&pr, &l, &cfg).unwrap()
    };
    let (a, b) = (go(1), go(8));
    assert_eq!(emit_trace(&a.trace), emit_trace(&b.trace));
    assert_eq!(a.best_score, b.best_score);
    assert_eq!(
        a.best_network.as_ref().map(emit_network),
        b.best_network.as_ref().map(emit_network)
    );
    assert_eq!(a.swap_rates, b.swap_rates);
}

#[test]
fn majority3_single_gate() {
    let pr = problem(3, 1);
    let cfg = RunConfig::new(StopCondition::repetitions(1000).with_goal(0.0), 1);
    let r = run(&pr, &TemperatureLadder::linear(0.0, 2.0, 4).unwrap(), &cfg).unwrap();
    assert_eq!(r.best_gate_count, Some(1));
    assert_eq!(r.stop_reason, StopReason::GoalReached);
}

#[test]
fn majority5_reaches_four_gates() {
    let pr = problem(5, 8);
    let l = ladder(&pr, 24);
    let cfg = RunConfig::new(StopCondition::repetitions(50_000).with_goal(-4.0), 2);
    let r = run(&pr, &l, &cfg).unwrap();
    assert_eq!(r.best_gate_count, Some(4));
    let net = r.best_network.unwrap();
    assert_eq!(ptsynth::oracle::exhaustive_error(&net, &pr.target), 0);
}

#[test]
fn hot_slots_accept_more_than_cold_ones() {
    let pr = problem(5, 8);
    let l = ladder(&pr, 24);
    let cfg = RunConfig::new(StopCondition::repetitions(300), 4);
    let r = run(&pr, &l, &cfg).unwrap();
    let rates = &r.acceptance_rates;
    assert!(rates[0] > *rates.last().unwrap(), "{rates:?}");
}

#[test]
fn traces_improve_monotonically() {
    for seed in 0..6 {
        let pr = problem(7, 12);
        let l = ladder(&pr, 12);
        let cfg = RunConfig::new(StopCondition::repetitions(400), seed);
        let t = run(&pr, &l, &cfg).unwrap().trace;
        assert!(!t.rows.is_empty());
        for w in t.rows.windows(2) {
            assert!(w[1].best_score < w[0].best_score);
            assert!(w[1].best_q <= w[0].best_q);
            assert!(w[1].repetition > w[0].repetition);
        }
    }
}

#[test]
fn time_limit_and_cancel_stop_the_run() {
    use std::sync::atomic::AtomicBool;
    use std::sync::Arc;
    use std::time::Duration;

    let pr = problem(9, 17);
    let l = TemperatureLadder::linear(0.0, 3.0, 4).unwrap();
    let cfg = RunConfig::new(
        StopCondition::repetitions(u64::MAX).with_time_limit(Duration::from_millis(200)),
        1,
    );
    assert_eq!(
        run(&pr, &l, &cfg).unwrap().stop_reason,
        StopReason::TimeLimit
    );

    let mut cfg = RunConfig::new(StopCondition::repetitions(u64::MAX), 1);
    cfg.cancel = Some(Arc::new(AtomicBool::new(true)));
    let r = run(&pr, &l, &cfg).unwrap();
    assert_eq!(r.stop_reason, StopReason::Cancelled);
    assert_eq!(r.repetitions, 0);
}

#[test]
fn weighted_targets_ignore_dont_cares() {
    // Only the all-ones vector matters, so a wire or constant is exact.
    let n = 3;
    let weights = (0..8).map(|i| if i == 7 { 1.0 } else { 0.0 }).collect();
    let tt = TruthTable::majority(n)
        .unwrap()
        .with_weights(weights)
        .unwrap();
    let pr = Problem::new(tt, Constraints::new(3));
    let cfg = RunConfig::new(StopCondition::repetitions(5000).with_goal(-3.0), 3);
    let r = run(&pr, &TemperatureLadder::linear(0.0, 3.0, 6).unwrap(), &cfg).unwrap();
    assert_eq!(r.best_gate_count, Some(0));
    assert!(ptsynth::oracle::eval_index(&r.best_network.unwrap(), 7));
}
