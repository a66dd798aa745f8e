//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use effsim::difftest::{
    DEFAULT_DEPTH, LawSuite, Lemma, Mutant, Theorem, check_laws, check_lemma, check_mutant, check_theorem,
};
use effsim::difftest::check_oracle;
use effsim::queens::{Pipeline, solve};

const GROUND_TRUTH_LIMIT: Duration = Duration::from_secs(1);
const N8_LIMIT: Duration = Duration::from_secs(30);
const THEOREM_LIMIT: Duration = Duration::from_secs(60);

const THEOREM_TRIALS: usize = 1000;
const LAW_TRIALS: usize = 500;
const LEMMA_TRIALS: usize = 400;
const ORACLE_PROGRAMS: usize = 1000;
const MUTANT_BUDGET: usize = 1000;

const LAW_SEED: u64 = 7;
const LEMMA_SEED: u64 = 13;
const ORACLE_SEED: u64 = 21;
const MUTANT_SEED: u64 = 99;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn criterion(name: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = f();
    Outcome { name, pass, detail, elapsed: start.elapsed() }
}

/// Counts n-queens solutions by testing every permutation of rows.
fn generate_and_test(n: usize) -> usize {
    fn go(n: usize, cols: &mut Vec<usize>, used: &mut [bool], count: &mut usize) {
        if cols.len() == n {
            let ok = (0..n).all(|i| (i + 1..n).all(|j| cols[i].abs_diff(cols[j]) != j - i));
            *count += ok as usize;
            return;
        }
        for r in 0..n {
            if !used[r] {
                used[r] = true;
                cols.push(r);
                go(n, cols, used, count);
                cols.pop();
                used[r] = false;
            }
        }
    }
    let mut count = 0;
    go(n, &mut Vec::new(), &mut vec![false; n], &mut count);
    count
}

fn ground_truth() -> (bool, String) {
    let start = Instant::now();
    let expected = vec![vec![2, 4, 1, 3], vec![3, 1, 4, 2]];
    let wrong: Vec<&str> = Pipeline::ALL.into_iter().filter(|&p| solve(p, 4) != expected).map(Pipeline::name).collect();
    let t = start.elapsed();
    let pass = wrong.is_empty() && t < GROUND_TRUTH_LIMIT;
    (pass, format!("10 pipelines, wrong: {wrong:?}, {:.3} s (limit {} s)", t.as_secs_f64(), GROUND_TRUTH_LIMIT.as_secs()))
}

fn cross_agreement() -> (bool, String) {
    let mut problems = Vec::new();
    let mut slowest = (Duration::ZERO, "");
    for n in 1..=8i64 {
        let mut runs = Vec::new();
        for p in Pipeline::ALL {
            let start = Instant::now();
            runs.push(solve(p, n));
            if n == 8 && start.elapsed() > slowest.0 {
                slowest = (start.elapsed(), p.name());
            }
        }
        if runs.windows(2).any(|w| w[0] != w[1]) {
            problems.push(format!("n={n}: pipelines disagree"));
        }
        if n >= 4 {
            let oracle = generate_and_test(n as usize);
            if runs[0].len() != oracle {
                problems.push(format!("n={n}: {} solutions, oracle {oracle}", runs[0].len()));
            }
        }
    }
    if slowest.0 >= N8_LIMIT {
        problems.push(format!("n=8 too slow on {}", slowest.1));
    }
    let detail = format!(
        "n=1..8, slowest n=8 pipeline {} {:.2} s (limit {} s){}",
        slowest.1,
        slowest.0.as_secs_f64(),
        N8_LIMIT.as_secs(),
        if problems.is_empty() { String::new() } else { format!(", {}", problems.join("; ")) }
    );
    (problems.is_empty(), detail)
}

fn theorems() -> (bool, String) {
    let start = Instant::now();
    let mut failing = Vec::new();
    for (i, th) in Theorem::ALL.into_iter().enumerate() {
        let r = check_theorem(th, THEOREM_TRIALS, 41 + i as u64, DEFAULT_DEPTH);
        if !r.passed() {
            failing.push(format!("{} ({} failures)", th.id(), r.failures.len()));
        }
    }
    let t = start.elapsed();
    let pass = failing.is_empty() && t < THEOREM_LIMIT;
    (
        pass,
        format!(
            "10 x {THEOREM_TRIALS} trials, depth {DEFAULT_DEPTH}, seeds 41..50, failing: {failing:?}, {:.2} s (limit {} s)",
            t.as_secs_f64(),
            THEOREM_LIMIT.as_secs()
        ),
    )
}

fn laws() -> (bool, String) {
    let mut failing = Vec::new();
    let mut witness = false;
    for s in LawSuite::ALL {
        let r = check_laws(s, LAW_TRIALS, LAW_SEED, DEFAULT_DEPTH);
        if !r.passed() {
            failing.push(format!("{} ({} failures)", s.id(), r.failures.len()));
        }
        if s == LawSuite::GlobalState {
            witness = r.witness.is_some();
        }
    }
    (
        failing.is_empty() && witness,
        format!("6 suites x {LAW_TRIALS} trials, failing: {failing:?}, local counterexample to put-or found: {witness}"),
    )
}

fn lemmas() -> (bool, String) {
    let failing: Vec<String> = Lemma::ALL
        .into_iter()
        .map(|l| (l, check_lemma(l, LEMMA_TRIALS, LEMMA_SEED, DEFAULT_DEPTH)))
        .filter(|(_, r)| !r.passed())
        .map(|(l, r)| format!("{} ({} failures)", l.id(), r.failures.len()))
        .collect();
    (failing.is_empty(), format!("8 lemmas x {LEMMA_TRIALS} trials, failing: {failing:?}"))
}

fn oracle() -> (bool, String) {
    let r = check_oracle(ORACLE_PROGRAMS, ORACLE_SEED, DEFAULT_DEPTH);
    (r.passed(), format!("{ORACLE_PROGRAMS} programs, {} mismatches", r.failures.len()))
}

fn mutants() -> (bool, String) {
    let mut parts = Vec::new();
    let mut pass = true;
    for m in Mutant::ALL {
        let r = check_mutant(m, MUTANT_BUDGET, MUTANT_SEED, DEFAULT_DEPTH);
        match r.failures.first() {
            Some(f) => parts.push(format!("{} caught by {} at trial {}", m.id(), m.detector(), f.trial)),
            None => {
                pass = false;
                parts.push(format!("{} NOT caught", m.id()));
            }
        }
    }
    (pass, format!("budget {MUTANT_BUDGET}: {}", parts.join(", ")))
}

fn main() -> ExitCode {
    let outcomes = [
        criterion("queens-ground-truth", ground_truth),
        criterion("queens-cross-agreement", cross_agreement),
        criterion("theorem-suite", theorems),
        criterion("law-suite", laws),
        criterion("lemma-suite", lemmas),
        criterion("oracle-anchor", oracle),
        criterion("mutation-sensitivity", mutants),
    ];
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:<24} {} [{:.2} s]", o.name, o.detail, o.elapsed.as_secs_f64());
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
