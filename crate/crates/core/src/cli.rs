//! Command-line front end. `main.rs` only forwards to [`run_cli`].
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 goal not reached or
//! degenerate calibration, 4 I/O failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::formats::{
    emit_ladder, emit_network, emit_trace, parse_ladder, parse_network, parse_truth_table_file,
};
use crate::netcore::{cleanup, Constraints, EvalCache};
use crate::ptengine::{
    calibrate_ladder, probe_swap_rates, run, CalibrationConfig, Problem, ReplicaCount, RunConfig,
    StopCondition, SynthesisReport, TemperatureLadder,
};
use crate::truthtab::TruthTable;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GOAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Best published MAJ-gate counts for majority-n, n = 3, 5, ..., 13.
const BEST_WITHOUT_INVERTERS: [(usize, usize); 6] =
    [(3, 1), (5, 4), (7, 7), (9, 13), (11, 20), (13, 28)];
const BEST_WITH_INVERTERS: [(usize, usize); 6] =
    [(3, 1), (5, 4), (7, 7), (9, 12), (11, 16), (13, 24)];
const BEST_LEAFY: [(usize, bool, usize); 2] = [(9, true, 13), (9, false, 14)];

/// Gate budgets used for the published runs.
const BUDGET_WITH_INVERTERS: [(usize, usize); 3] = [(9, 16), (11, 25), (13, 35)];
const BUDGET_WITHOUT_INVERTERS: [(usize, usize); 3] = [(9, 17), (11, 31), (13, 44)];
/// Budgets for the small instances of the benchmark suites.
const SMALL_BUDGETS: [(usize, usize); 3] = [(3, 1), (5, 8), (7, 10)];

fn lookup(table: &[(usize, usize)], n: usize) -> Option<usize> {
    table.iter().find(|e| e.0 == n).map(|e| e.1)
}

/// Best known gate count for majority-n under the given gate set.
pub fn best_known_gates(n: usize, inverters: bool, leafy: bool) -> Option<usize> {
    if leafy {
        return BEST_LEAFY
            .iter()
            .find(|e| e.0 == n && e.1 == inverters)
            .map(|e| e.2);
    }
    let table = if inverters {
        &BEST_WITH_INVERTERS
    } else {
        &BEST_WITHOUT_INVERTERS
    };
    lookup(table, n)
}

/// Published gate budget for majority-n, n in {9, 11, 13}.
pub fn default_budget(n: usize, inverters: bool) -> Option<usize> {
    let table = if inverters {
        &BUDGET_WITH_INVERTERS
    } else {
        &BUDGET_WITHOUT_INVERTERS
    };
    lookup(table, n)
}

#[derive(Parser, Debug)]
#[command(
    name = "ptsynth",
    version,
    about = "Parallel tempering synthesis of majority networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search for a small network implementing the target.
    Synth(SynthArgs),
    /// Check a network file against a target.
    Verify(VerifyArgs),
    /// Clean up a network file and print the result.
    Simplify(SimplifyArgs),
    /// Build a temperature ladder for a target.
    Calibrate(CalibrateArgs),
    /// Run a benchmark suite of majority functions.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GateSet {
    /// Majority gates only.
    Maj,
    /// Majority gates with inverted operands.
    MajInv,
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    /// `maj:<n>` or a `.tt` truth-table file.
    #[arg(long)]
    pub target: String,
    #[arg(long, value_enum, default_value = "maj")]
    pub gates: GateSet,
    /// Require a primary input on every gate.
    #[arg(long)]
    pub leafy: bool,
    /// Gate budget p (defaults exist for maj:9, maj:11, maj:13).
    #[arg(long)]
    pub max_nodes: Option<usize>,
    #[arg(long, env = "PTSYNTH_SEED", default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct LadderArgs {
    /// `auto` or a ladder file.
    #[arg(long, default_value = "auto")]
    pub ladder: String,
    /// Replica count for automatic ladders (default: 51, within 41..=61).
    #[arg(long)]
    pub replicas: Option<usize>,
    /// Beta = 0 warm-up sweeps used for calibration.
    #[arg(long, default_value_t = 200)]
    pub warmup: usize,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub ladder: LadderArgs,
    #[arg(long, default_value_t = 10_000_000)]
    pub max_reps: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Stop at this gate count (default: best published count, else any exact network).
    #[arg(long)]
    pub goal_q: Option<usize>,
    /// Worker threads (default: available parallelism, capped at the replica count).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Best network output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Trace CSV output file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Leave the elapsed_seconds column empty so traces are reproducible.
    #[arg(long)]
    pub no_trace_time: bool,
    /// Swap-rate snapshot interval in repetitions (0 disables).
    #[arg(long, default_value_t = 0)]
    pub swap_rate_interval: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub network: PathBuf,
    /// `maj:<n>` or a `.tt` file (default: majority of the network's inputs).
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Args, Debug)]
pub struct SimplifyArgs {
    pub network: PathBuf,
}

#[derive(Args, Debug)]
pub struct CalibrateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub replicas: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub warmup: usize,
    /// Probe run length in repetitions; 0 skips the probe.
    #[arg(long, default_value_t = 0)]
    pub probe: u64,
    /// Midpoint insertion rounds for pairs swapping below 20%.
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// n = 3, 5, 7 without inverters.
    Quick,
    /// n = 3..13, with and without inverters.
    Paper,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, env = "PTSYNTH_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000_000)]
    pub max_reps: u64,
    /// Per-instance wall-clock limit in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Summary CSV output file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Failure with an exit code and message for standard error.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            Error::DegenerateWarmup(_) => EXIT_GOAL,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    })
}

/// Target for `maj:<n>` or a truth-table file.
pub fn parse_target(spec: &str) -> Result<(TruthTable, Option<usize>), CliError> {
    if let Some(n) = spec.strip_prefix("maj:") {
        let n: usize = n
            .parse()
            .map_err(|_| usage(format!("invalid majority size in {spec:?}")))?;
        let tt = TruthTable::majority(n).map_err(CliError::from)?;
        return Ok((tt, Some(n)));
    }
    let text = read(Path::new(spec))?;
    Ok((parse_truth_table_file(&text)?, None))
}

struct Resolved {
    problem: Problem,
    majority: Option<usize>,
}

fn resolve_problem(args: &ProblemArgs) -> Result<Resolved, CliError> {
    let (tt, majority) = parse_target(&args.target)?;
    let inverters = args.gates == GateSet::MajInv;
    let p = match args.max_nodes {
        Some(p) if p >= 1 => p,
        Some(_) => return Err(usage("--max-nodes must be positive")),
        None => majority
            .and_then(|n| default_budget(n, inverters))
            .ok_or_else(|| usage("--max-nodes is required for this target"))?,
    };
    let constraints = Constraints::new(p)
        .with_inverters(inverters)
        .with_leafy(args.leafy);
    Ok(Resolved {
        problem: Problem::new(tt, constraints),
        majority,
    })
}

fn resolve_ladder(
    problem: &Problem,
    args: &LadderArgs,
    seed: u64,
) -> Result<TemperatureLadder, CliError> {
    if args.ladder != "auto" {
        let ladder = parse_ladder(&read(Path::new(&args.ladder))?)?;
        return Ok(ladder);
    }
    let config = calibration_config(args.replicas, args.warmup, seed);
    Ok(calibrate_ladder(problem, &config)?.ladder)
}

fn calibration_config(replicas: Option<usize>, warmup: usize, seed: u64) -> CalibrationConfig {
    CalibrationConfig {
        warmup_sweeps: warmup,
        replicas: replicas.map_or_else(ReplicaCount::default, ReplicaCount::Fixed),
        seed,
        ..Default::default()
    }
}

fn default_threads(m: usize) -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(m)
        .max(1)
}

fn cancel_flag() -> Arc<AtomicBool> {
    static FLAG: OnceLock<Arc<AtomicBool>> = OnceLock::new();
    FLAG.get_or_init(|| {
        let flag = Arc::new(AtomicBool::new(false));
        let handler_flag = flag.clone();
        // Another handler may already be installed when embedded; the run
        // still honours the flag.
        let _ = ctrlc::set_handler(move || handler_flag.store(true, Ordering::Relaxed));
        flag
    })
    .clone()
}

fn cmd_synth(args: &SynthArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let Resolved { problem, majority } = resolve_problem(&args.problem)?;
    let c = problem.constraints;
    let p = c.max_nodes;
    let ladder = resolve_ladder(&problem, &args.ladder, args.problem.seed)?;
    let goal_q = args
        .goal_q
        .or_else(|| majority.and_then(|n| best_known_gates(n, c.inverters_allowed, c.leafy)));
    let score_goal = goal_q.map_or(0.0, |q| q as f64 - p as f64).min(0.0);
    let mut stop = StopCondition::repetitions(args.max_reps).with_goal(score_goal);
    if let Some(t) = args.time_limit {
        stop = stop.with_time_limit(Duration::from_secs_f64(t));
    }
    let mut config = RunConfig::new(stop, args.problem.seed).with_threads(
        args.threads
            .unwrap_or_else(|| default_threads(ladder.len())),
    );
    config.record_time = !args.no_trace_time;
    config.swap_rate_interval = (args.swap_rate_interval > 0).then_some(args.swap_rate_interval);
    config.cancel = Some(cancel_flag());

    let report = run(&problem, &ladder, &config)?;
    let summary = summarize(&report, p, ladder.len(), goal_q);

    if let Some(path) = &args.trace {
        write_file(path, &emit_trace(&report.trace))?;
    }
    match (&report.best_network, &args.out) {
        (Some(net), Some(path)) => write_file(path, &emit_network(net))?,
        (Some(net), None) => {
            let _ = out.write_all(emit_network(net).as_bytes());
        }
        (None, _) => {}
    }
    eprint!("{summary}");
    Ok(if report.best_score <= score_goal {
        EXIT_OK
    } else {
        EXIT_GOAL
    })
}

fn summarize(report: &SynthesisReport, p: usize, m: usize, goal: Option<usize>) -> String {
    let mut s = String::new();
    match report.best_gate_count {
        Some(q) => s.push_str(&format!("best q: {q} (budget {p})\n")),
        None => s.push_str(&format!(
            "no exact network; best error {}\n",
            report.best_score
        )),
    }
    if let Some(g) = goal {
        s.push_str(&format!("goal q: {g}\n"));
    }
    s.push_str(&format!(
        "repetitions: {}\nreplicas: {m}\nwall time: {:.3}s\nstop: {:?}\n",
        report.repetitions,
        report.elapsed.as_secs_f64(),
        report.stop_reason
    ));
    s
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let net = parse_network(&read(&args.network)?)?;
    let target = match &args.target {
        Some(spec) => parse_target(spec)?.0,
        None => TruthTable::majority(net.n())
            .map_err(|_| usage("no --target given and the input count is even"))?,
    };
    let cache = EvalCache::evaluate_full(&net, Arc::new(target))?;
    let energy = cache.energy();
    let (_, q) = cleanup(&net);
    let leafy = net.gates().iter().all(|g| g.has_primary_input());
    let inverter_free = net
        .gates()
        .iter()
        .flat_map(|g| g.inputs)
        .chain([net.output()])
        .all(|l| !l.is_inverted());
    let _ = writeln!(
        out,
        "energy: {energy}\ngates: {}\nq after cleanup: {q}\nleafy: {}\ninverter-free: {}",
        net.len(),
        if leafy { "yes" } else { "no" },
        if inverter_free { "yes" } else { "no" },
    );
    if let Some(w) = cache.target().weights() {
        let _ = writeln!(out, "weighted energy: {}", cache.weighted_energy(w)?);
    }
    Ok(if cache.objective() == 0.0 {
        EXIT_OK
    } else {
        EXIT_GOAL
    })
}

fn cmd_simplify(args: &SimplifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let net = parse_network(&read(&args.network)?)?;
    let (mut clean, q) = cleanup(&net);
    let mut c = *clean.constraints();
    c.max_nodes = q;
    clean.set_constraints(c);
    let _ = out.write_all(emit_network(&clean).as_bytes());
    Ok(EXIT_OK)
}

fn cmd_calibrate(args: &CalibrateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let Resolved { problem, .. } = resolve_problem(&args.problem)?;
    let mut config = calibration_config(args.replicas, args.warmup, args.problem.seed);
    config.refine_rounds = args.refine;
    if args.probe > 0 {
        config.probe_repetitions = args.probe;
    }
    let cal = calibrate_ladder(&problem, &config)?;
    let _ = writeln!(out, "# samples: {}", cal.samples);
    for (rate, beta) in config.anchor_rates.iter().zip(cal.anchors) {
        let _ = writeln!(out, "# anchor {rate}: beta {beta}");
    }
    let _ = writeln!(out, "# replicas: {}", cal.ladder.len());
    let _ = out.write_all(emit_ladder(&cal.ladder).as_bytes());
    if args.probe > 0 {
        let rates = probe_swap_rates(&problem, &cal.ladder, args.probe, args.problem.seed)?;
        let min = rates.iter().cloned().fold(f64::INFINITY, f64::min);
        let _ = writeln!(out, "# probe swap rates (min {min:.4}):");
        for (i, r) in rates.iter().enumerate() {
            let _ = writeln!(out, "# pair {i}: {r:.4}");
        }
    }
    if let Some(path) = &args.out {
        write_file(path, &emit_ladder(&cal.ladder))?;
    }
    Ok(EXIT_OK)
}

/// One benchmark instance.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub inverters: bool,
    pub p: usize,
    pub known_q: usize,
    pub found_q: Option<usize>,
    pub repetitions: u64,
    pub seconds: f64,
}

pub const BENCH_HEADER: &str = "n,gates,p,known_q,found_q,repetitions,elapsed_seconds";

pub fn bench_instances(suite: Suite) -> Vec<(usize, bool, usize)> {
    let small = |n| lookup(&SMALL_BUDGETS, n);
    match suite {
        Suite::Quick => [3, 5, 7]
            .iter()
            .map(|&n| (n, false, small(n).unwrap()))
            .collect(),
        Suite::Paper => [false, true]
            .iter()
            .flat_map(|&inv| {
                (3..=13).step_by(2).map(move |n| {
                    let p = small(n).or_else(|| default_budget(n, inv)).unwrap();
                    (n, inv, p)
                })
            })
            .collect(),
    }
}

pub fn emit_bench_csv(rows: &[BenchRow]) -> String {
    let mut s = format!("{BENCH_HEADER}\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n,
            if r.inverters { "maj-inv" } else { "maj" },
            r.p,
            r.known_q,
            r.found_q.map_or(String::new(), |q| q.to_string()),
            r.repetitions,
            r.seconds
        ));
    }
    s
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut rows = Vec::new();
    let _ = writeln!(
        out,
        "{:>3} {:>8} {:>4} {:>8} {:>8} {:>12} {:>10}",
        "n", "gates", "p", "known q", "found q", "repetitions", "seconds"
    );
    for (n, inverters, p) in bench_instances(args.suite) {
        let started = Instant::now();
        let problem = Problem::new(
            TruthTable::majority(n).map_err(CliError::from)?,
            Constraints::new(p).with_inverters(inverters),
        );
        let ladder = calibrate_ladder(&problem, &calibration_config(None, 200, args.seed))?.ladder;
        let known_q = best_known_gates(n, inverters, false).unwrap();
        let mut stop =
            StopCondition::repetitions(args.max_reps).with_goal(known_q as f64 - p as f64);
        if let Some(t) = args.time_limit {
            stop = stop.with_time_limit(Duration::from_secs_f64(t));
        }
        let mut config = RunConfig::new(stop, args.seed).with_threads(
            args.threads
                .unwrap_or_else(|| default_threads(ladder.len())),
        );
        config.cancel = Some(cancel_flag());
        let report = run(&problem, &ladder, &config)?;
        let row = BenchRow {
            n,
            inverters,
            p,
            known_q,
            found_q: report.best_gate_count,
            repetitions: report.repetitions,
            seconds: started.elapsed().as_secs_f64(),
        };
        let _ = writeln!(
            out,
            "{:>3} {:>8} {:>4} {:>8} {:>8} {:>12} {:>10.2}",
            n,
            if inverters { "maj-inv" } else { "maj" },
            p,
            known_q,
            row.found_q.map_or("-".to_string(), |q| q.to_string()),
            row.repetitions,
            row.seconds
        );
        rows.push(row);
        if cancel_flag().load(Ordering::Relaxed) {
            break;
        }
    }
    if let Some(path) = &args.csv {
        write_file(path, &emit_bench_csv(&rows))?;
    }
    let all = rows
        .iter()
        .all(|r| r.found_q.is_some_and(|q| q <= r.known_q));
    Ok(if all { EXIT_OK } else { EXIT_GOAL })
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Synth(a) => cmd_synth(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Simplify(a) => cmd_simplify(a, out),
        Command::Calibrate(a) => cmd_calibrate(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
