//! Suite reports and the trial runner.

use std::fmt::{Debug, Display};
use std::panic::{AssertUnwindSafe, catch_unwind};
use std::thread;

use serde::Serialize;

use super::generate::trial_seeds;

/// Two sides of a check that disagreed on one program.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Mismatch {
    pub ast_text: String,
    pub lhs: String,
    pub rhs: String,
}

impl Mismatch {
    pub fn new(ast: impl Display, lhs: impl Debug, rhs: impl Debug) -> Self {
        Mismatch { ast_text: ast.to_string(), lhs: format!("{lhs:?}"), rhs: format!("{rhs:?}") }
    }
}

pub type Verdict = Result<(), Mismatch>;

/// `Ok` if both sides agree.
pub fn agree<T: PartialEq + Debug>(ast: impl Display, lhs: T, rhs: T) -> Verdict {
    if lhs == rhs { Ok(()) } else { Err(Mismatch::new(ast, lhs, rhs)) }
}

/// A failing trial, after depth-decrement shrinking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    pub trial: usize,
    pub trial_seed: u64,
    /// Smallest depth at which the trial seed still fails.
    pub depth: u32,
    pub ast_text: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub depth: u32,
    pub failures: Vec<Failure>,
    /// A counterexample that a search was expected to find.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    /// One summary line, followed by one block per failure.
    pub fn to_text(&self) -> String {
        let status = if self.passed() { "ok" } else { "FAILED" };
        let mut out = format!(
            "{}: {status} ({} trials, seed {}, depth {}, {} failures)\n",
            self.suite,
            self.trials,
            self.seed,
            self.depth,
            self.failures.len()
        );
        for f in &self.failures {
            out.push_str(&format!(
                "  trial {} (seed {}, depth {}): {}\n    lhs: {}\n    rhs: {}\n",
                f.trial, f.trial_seed, f.depth, f.ast_text, f.lhs, f.rhs
            ));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!(
                "  witness (seed {}, depth {}): {}\n    lhs: {}\n    rhs: {}\n",
                w.trial_seed, w.depth, w.ast_text, w.lhs, w.rhs
            ));
        }
        out
    }
}

const WORKER_STACK: usize = 256 << 20;

fn guarded(check: &(dyn Fn(u64, u32) -> Verdict + Sync), seed: u64, depth: u32) -> Verdict {
    catch_unwind(AssertUnwindSafe(|| check(seed, depth))).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| e.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".to_string());
        Err(Mismatch { ast_text: format!("(seed {seed})"), lhs: format!("panic: {msg}"), rhs: String::new() })
    })
}

/// Replays a failing seed at smaller depths and keeps the smallest failure.
fn shrink(check: &(dyn Fn(u64, u32) -> Verdict + Sync), seed: u64, depth: u32, first: Mismatch) -> (u32, Mismatch) {
    let mut best = (depth, first);
    for d in (0..depth).rev() {
        match guarded(check, seed, d) {
            Err(m) => best = (d, m),
            Ok(()) => break,
        }
    }
    best
}

/// Runs `trials` independent trials of `check`, spread over worker threads.
/// Failures are ordered by trial index.
pub fn run_trials(
    suite: &str,
    trials: usize,
    seed: u64,
    depth: u32,
    check: &(dyn Fn(u64, u32) -> Verdict + Sync),
) -> Report {
    let seeds = trial_seeds(seed, trials);
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).clamp(1, 8).min(trials.max(1));
    let chunk = seeds.len().div_ceil(workers).max(1);
    let mut failures: Vec<Failure> = thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                thread::Builder::new()
                    .stack_size(WORKER_STACK)
                    .spawn_scoped(scope, move || {
                        let mut found = Vec::new();
                        for (i, &ts) in part.iter().enumerate() {
                            if let Err(m) = guarded(check, ts, depth) {
                                let (d, m) = shrink(check, ts, depth, m);
                                found.push(Failure {
                                    trial: c * chunk + i,
                                    trial_seed: ts,
                                    depth: d,
                                    ast_text: m.ast_text,
                                    lhs: m.lhs,
                                    rhs: m.rhs,
                                });
                            }
                        }
                        found
                    })
                    .expect("spawn trial worker")
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("trial worker panicked")).collect()
    });
    failures.sort_by_key(|f| f.trial);
    Report { suite: suite.to_string(), seed, trials, depth, failures, witness: None }
}

/// Searches trial seeds in order for the first one on which `check` fails.
pub fn find_witness(
    trials: usize,
    seed: u64,
    depth: u32,
    check: &(dyn Fn(u64, u32) -> Verdict + Sync),
) -> Option<Failure> {
    trial_seeds(seed, trials).into_iter().enumerate().find_map(|(i, ts)| {
        guarded(check, ts, depth).err().map(|m| Failure {
            trial: i,
            trial_seed: ts,
            depth,
            ast_text: m.ast_text,
            lhs: m.lhs,
            rhs: m.rhs,
        })
    })
}
