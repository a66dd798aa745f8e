//! Command-line interface: queens runs, check suites, benchmarks and machine
//! traces.

use std::io::{self, Write};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::difftest::{DEFAULT_DEPTH, LawSuite, Lemma, Report, Suite, Theorem};
use crate::machines::{Step, simulate_tf_traced};
use crate::queens::{Pipeline, QueensSigM, QueensState, Row, on_deep_stack, queens_m, solve};
use crate::semantics::h_nil;

/// Seed used when neither `--seed` nor `EFFSIM_SEED` is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "effsim", version, about = "Backtracking effects: handlers, translations, machines and their checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct SuiteArgs {
    /// Number of trials per suite.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    /// Base seed; falls back to EFFSIM_SEED, then 42.
    #[arg(long, env = "EFFSIM_SEED")]
    pub seed: Option<u64>,
    /// Depth of generated programs (node budget 2^depth).
    #[arg(long, default_value_t = DEFAULT_DEPTH, value_parser = clap::value_parser!(u32).range(0..=10))]
    pub depth: u32,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the n-queens puzzle with one pipeline.
    Queens {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        n: i64,
        #[arg(long, default_value = "fusedTF")]
        pipeline: Pipeline,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Run an equivalence, oracle or mutant suite (all equivalences by default).
    Difftest {
        #[arg(long)]
        suite: Option<Suite>,
        #[command(flatten)]
        args: SuiteArgs,
    },
    /// Run a law suite (all six by default).
    Laws {
        #[arg(long)]
        suite: Option<LawSuite>,
        #[command(flatten)]
        args: SuiteArgs,
    },
    /// Run a lemma check (all eight by default).
    Lemmas {
        #[arg(long)]
        suite: Option<Lemma>,
        #[command(flatten)]
        args: SuiteArgs,
    },
    /// Run every pipeline on one board, check agreement, and time them.
    Bench {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        n: i64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Emit one record per transition of the trail machine.
    Trace {
        #[arg(long, default_value = "fusedTF")]
        pipeline: Pipeline,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        n: i64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Serialize)]
struct QueensOut<'a> {
    n: i64,
    solutions: &'a [Vec<Row>],
    count: usize,
}

#[derive(Serialize)]
struct BenchRow {
    pipeline: &'static str,
    count: usize,
    millis: f64,
}

#[derive(Serialize)]
struct BenchOut {
    n: i64,
    agree: bool,
    count: usize,
    runs: Vec<BenchRow>,
}

#[derive(Serialize)]
struct TraceOut<'a> {
    n: i64,
    pipeline: &'static str,
    count: usize,
    steps: &'a [Step],
}

fn run_suites(suites: Vec<Suite>, default_trials: u64, args: &SuiteArgs, out: &mut dyn Write) -> io::Result<i32> {
    let trials = args.trials.unwrap_or(default_trials) as usize;
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let mut code = EXIT_OK;
    for s in suites {
        let report: Report = s.run(trials, seed, args.depth);
        if !report.passed() {
            code = EXIT_FAILURE;
        }
        match args.output {
            Output::Json => writeln!(out, "{}", report.to_json())?,
            Output::Text => write!(out, "{}", report.to_text())?,
        }
    }
    Ok(code)
}

fn queens_cmd(n: i64, p: Pipeline, output: Output, out: &mut dyn Write) -> io::Result<i32> {
    let sols = solve(p, n);
    match output {
        Output::Json => {
            let j = serde_json::to_string(&QueensOut { n, solutions: &sols, count: sols.len() })?;
            writeln!(out, "{j}")?;
        }
        Output::Text => {
            for s in &sols {
                let row: Vec<String> = s.iter().map(|r| r.to_string()).collect();
                writeln!(out, "{}", row.join(" "))?;
            }
            writeln!(out, "count: {}", sols.len())?;
        }
    }
    Ok(EXIT_OK)
}

fn bench_cmd(n: i64, output: Output, out: &mut dyn Write) -> io::Result<i32> {
    let mut runs = Vec::new();
    let mut answers = Vec::new();
    for p in Pipeline::ALL {
        let start = Instant::now();
        let sols = solve(p, n);
        let millis = start.elapsed().as_secs_f64() * 1e3;
        runs.push(BenchRow { pipeline: p.name(), count: sols.len(), millis });
        answers.push(sols);
    }
    let agree = answers.windows(2).all(|w| w[0] == w[1]);
    let count = answers[0].len();
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string(&BenchOut { n, agree, count, runs })?)?,
        Output::Text => {
            if agree {
                writeln!(out, "agreement: all {} pipelines return the same {count} solutions", Pipeline::ALL.len())?;
            } else {
                writeln!(out, "agreement: FAILED, pipelines disagree")?;
            }
            for r in &runs {
                writeln!(out, "{:<8} {:>6} solutions {:>12.3} ms", r.pipeline, r.count, r.millis)?;
            }
        }
    }
    Ok(if agree { EXIT_OK } else { EXIT_FAILURE })
}

/// Runs the traced trail machine on the queens program.
pub fn trace_queens(n: i64) -> (Vec<Vec<Row>>, Vec<Step>) {
    on_deep_stack(move || {
        let (t, trace) = simulate_tf_traced(&queens_m::<QueensSigM, _, _>(n), QueensState::new());
        let sols = h_nil(&t);
        let steps = trace.borrow().steps.clone();
        (sols, steps)
    })
}

fn trace_cmd(p: Pipeline, n: i64, output: Output, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    if p != Pipeline::FusedTF {
        writeln!(err, "error: only the fusedTF pipeline can be traced, got `{p}`")?;
        return Ok(EXIT_USAGE);
    }
    let (sols, steps) = trace_queens(n);
    match output {
        Output::Json => {
            let j = serde_json::to_string(&TraceOut { n, pipeline: p.name(), count: sols.len(), steps: &steps })?;
            writeln!(out, "{j}")?;
        }
        Output::Text => {
            writeln!(out, "step op results cp_stack trail markers")?;
            for (i, s) in steps.iter().enumerate() {
                let op = serde_json::to_value(s.op)?;
                let op = op.as_str().unwrap_or("?");
                writeln!(out, "{i} {op} {} {} {} {}", s.results, s.cp_stack, s.trail, s.markers)?;
            }
            writeln!(out, "count: {}", sols.len())?;
        }
    }
    Ok(EXIT_OK)
}

/// Executes a parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the process exit status.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match cli.command {
        Command::Queens { n, pipeline, output } => queens_cmd(n, pipeline, output, out),
        Command::Difftest { suite, args } => {
            let suites = match suite {
                Some(s) => vec![s],
                None => Theorem::ALL.into_iter().map(Suite::Theorem).collect(),
            };
            run_suites(suites, 1000, &args, out)
        }
        Command::Laws { suite, args } => {
            let suites = suite.map_or_else(|| LawSuite::ALL.to_vec(), |s| vec![s]);
            run_suites(suites.into_iter().map(Suite::Laws).collect(), 500, &args, out)
        }
        Command::Lemmas { suite, args } => {
            let suites = suite.map_or_else(|| Lemma::ALL.to_vec(), |s| vec![s]);
            run_suites(suites.into_iter().map(Suite::Lemma).collect(), 400, &args, out)
        }
        Command::Bench { n, output } => bench_cmd(n, output, out),
        Command::Trace { pipeline, n, output } => trace_cmd(pipeline, n, output, out, err),
    }
}

/// Parses `argv` and executes it. Usage errors print clap's message and
/// return [`EXIT_USAGE`].
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("effsim").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn queens_json() {
        let (code, out, _) = call(&["queens", "--n", "4", "--pipeline", "fusedTF", "--output", "json"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"n":4,"solutions":[[2,4,1,3],[3,1,4,2]],"count":2}"#);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["queens", "--n", "0", "--pipeline", "naive"]).0, 2);
        assert_eq!(call(&["queens", "--n", "4", "--pipeline", "bogus"]).0, 2);
        assert_eq!(call(&["queens", "--n", "4", "--bogus"]).0, 2);
        assert_eq!(call(&["laws", "--trials", "0"]).0, 2);
        assert_eq!(call(&["difftest", "--depth", "11"]).0, 2);
        assert_eq!(call(&["trace", "--pipeline", "local", "--n", "4"]).0, 2);
    }

    #[test]
    fn failing_suite_exits_1() {
        let (code, out, _) = call(&["difftest", "--suite", "skip-restoring-put", "--trials", "200", "--seed", "1"]);
        assert_eq!(code, 1, "{out}");
    }

    #[test]
    fn trace_lists_steps() {
        let (code, out, _) = call(&["trace", "--n", "4"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("step op"));
        assert!(out.trim_end().ends_with("count: 2"));
    }
}
