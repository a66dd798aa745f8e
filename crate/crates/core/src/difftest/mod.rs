//! Differential testing: random programs, an independent oracle, and
//! executable checks of the laws, equivalences and lemmas the library relies
//! on.

pub mod ast;
pub mod generate;
pub mod laws;
pub mod lemmas;
pub mod lower;
pub mod mutants;
pub mod oracle;
pub mod report;
pub mod theorems;

pub use ast::{Ast, Cont, Expr, Families};
pub use generate::{Gen, gen_program, trial_seeds};
pub use laws::{LawSuite, check_laws};
pub use lemmas::{Lemma, check_lemma};
pub use lower::{IntState, ShapeError, Target, lower};
pub use mutants::{Mutant, check_mutant};
pub use oracle::{Mode, OracleOutcome, oracle_eval};
pub use report::{Failure, Mismatch, Report};
pub use theorems::{Theorem, UnknownSuite, check_theorem};

use crate::semantics::{h_global_with_state, h_local, h_local_m, h_nil};
use theorems::{ModifySig, StateSig, sample};

/// Default depth of generated programs.
pub const DEFAULT_DEPTH: u32 = 6;

/// Name of the suite comparing handlers against the oracle.
pub const ORACLE_SUITE: &str = "oracle";

/// One trial of the oracle anchor: local and global handling of a state
/// program, and local handling of a modify program, against direct
/// evaluation.
pub fn oracle_trial(seed: u64, depth: u32) -> report::Verdict {
    let (p, s) = sample(seed, depth, Families::STATE_NONDET);
    let t: crate::effect::Tree<StateSig, i64> = lower(&p).expect("state program");
    report::agree(&p, h_nil(&h_local(&t, s)), oracle_eval(&p, s, Mode::Local).answers)?;
    let g = oracle_eval(&p, s, Mode::Global);
    report::agree(&p, h_nil(&h_global_with_state(&t, s)), (g.answers, g.final_state.unwrap_or(s)))?;

    let (p, s) = sample(seed ^ 0x9e37_79b9_7f4a_7c15, depth, Families::MODIFY_NONDET);
    let t: crate::effect::Tree<ModifySig<i64>, i64> = lower(&p).expect("modify program");
    report::agree(&p, h_nil(&h_local_m(&t, s)), oracle_eval(&p, s, Mode::Local).answers)
}

pub fn check_oracle(trials: usize, seed: u64, depth: u32) -> Report {
    report::run_trials(ORACLE_SUITE, trials, seed, depth, &oracle_trial)
}

/// Any suite runnable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Theorem(Theorem),
    Laws(LawSuite),
    Lemma(Lemma),
    Mutant(Mutant),
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => ORACLE_SUITE,
            Suite::Theorem(t) => t.id(),
            Suite::Laws(l) => l.id(),
            Suite::Lemma(l) => l.id(),
            Suite::Mutant(m) => m.id(),
        }
    }

    pub fn run(self, trials: usize, seed: u64, depth: u32) -> Report {
        match self {
            Suite::Oracle => check_oracle(trials, seed, depth),
            Suite::Theorem(t) => check_theorem(t, trials, seed, depth),
            Suite::Laws(l) => check_laws(l, trials, seed, depth),
            Suite::Lemma(l) => check_lemma(l, trials, seed, depth),
            Suite::Mutant(m) => check_mutant(m, trials, seed, depth),
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == ORACLE_SUITE {
            return Ok(Suite::Oracle);
        }
        s.parse()
            .map(Suite::Theorem)
            .or_else(|_| s.parse().map(Suite::Laws))
            .or_else(|_| s.parse().map(Suite::Lemma))
            .or_else(|_| s.parse().map(Suite::Mutant))
    }
}
