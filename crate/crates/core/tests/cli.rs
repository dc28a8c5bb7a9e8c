use std::fs;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ptsynth");

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.mig", env!("CARGO_MANIFEST_DIR"))
}

fn ptsynth(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("PTSYNTH_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_exact_fixture() {
    let o = ptsynth(&["verify", &fixture("maj9_inv"), "--target", "maj:9"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("energy: 0"), "{s}");
    assert!(s.contains("q after cleanup: 12"), "{s}");
    assert!(s.contains("inverter-free: no"), "{s}");
}

#[test]
fn verify_wrong_target_fails() {
    let o = ptsynth(&["verify", &fixture("maj9"), "--target", "maj:11"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let tt = dir.path().join("and.tt");
    fs::write(&tt, "# two inputs, so the arity is wrong\n0x8").unwrap();
    let o = ptsynth(&["verify", &fixture("maj9"), "--target", tt.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn verify_nonzero_energy_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("and.mig");
    fs::write(&f, "inputs 3\ng0 = MAJ(x0, x1, 0)\noutput g0\n").unwrap();
    let o = ptsynth(&["verify", f.to_str().unwrap(), "--target", "maj:3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("energy: 2"));
}

#[test]
fn parse_errors_exit_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.mig");
    fs::write(&f, "inputs 3\ng0 = MAJ(x0 x1, x2)\noutput g0\n").unwrap();
    let o = ptsynth(&["verify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:13"));
}

#[test]
fn missing_file_exits_4() {
    let o = ptsynth(&["simplify", "/nonexistent/net.mig"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn simplify_drops_dead_gates() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("n.mig");
    fs::write(
        &f,
        "inputs 3\ng0 = MAJ(x0, x1, x2)\ng1 = MAJ(g0, 0, 1)\ng2 = MAJ(x0, x1, 0)\noutput g1\n",
    )
    .unwrap();
    let o = ptsynth(&["simplify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "inputs 3\ng0 = MAJ(x0, x1, x2)\noutput g0\n");
}

#[test]
fn synth_writes_network_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("best.mig");
    let trace = dir.path().join("trace.csv");
    let o = ptsynth(&[
        "synth",
        "--target",
        "maj:5",
        "--max-nodes",
        "8",
        "--replicas",
        "16",
        "--seed",
        "5",
        "--out",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = ptsynth(&["verify", out.to_str().unwrap(), "--target", "maj:5"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("gates: 4"));
    let csv = fs::read_to_string(trace).unwrap();
    assert!(csv.starts_with("repetition,best_q,best_score,elapsed_seconds\n"));
}

#[test]
fn synth_seed_from_environment() {
    let run = |seed: &str| {
        Command::new(BIN)
            .args([
                "synth",
                "--target",
                "maj:7",
                "--max-nodes",
                "10",
                "--replicas",
                "8",
            ])
            .args(["--max-reps", "30", "--goal-q", "1", "--no-trace-time"])
            .env("PTSYNTH_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(run("17").stdout, run("17").stdout);
}

#[test]
fn synth_needs_budget_for_unknown_sizes() {
    let o = ptsynth(&["synth", "--target", "maj:7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn synth_unreachable_goal_exits_3() {
    let o = ptsynth(&[
        "synth",
        "--target",
        "maj:7",
        "--max-nodes",
        "10",
        "--replicas",
        "4",
        "--max-reps",
        "5",
        "--goal-q",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn calibrate_writes_ladder_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ladder.txt");
    let o = ptsynth(&[
        "calibrate",
        "--target",
        "maj:5",
        "--max-nodes",
        "8",
        "--replicas",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let ladder = ptsynth::formats::parse_ladder(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(ladder.len(), 10);

    let best = dir.path().join("best.mig");
    let o = ptsynth(&[
        "synth",
        "--target",
        "maj:5",
        "--max-nodes",
        "8",
        "--ladder",
        out.to_str().unwrap(),
        "--out",
        best.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn calibrate_degenerate_warmup_exits_3() {
    let o = ptsynth(&[
        "calibrate",
        "--target",
        "maj:5",
        "--max-nodes",
        "8",
        "--warmup",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bench_quick_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let o = ptsynth(&["bench", "quick", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], ptsynth::cli::BENCH_HEADER);
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("5,maj,8,4,4,"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(ptsynth(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ptsynth(&["--help"]).status.code(), Some(0));
}
