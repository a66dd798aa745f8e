//! Equivalences between handlers, translations and machines, checked on
//! random programs.

use std::fmt;
use std::str::FromStr;

use crate::effect::{NilF, NondetF, StateF, StateNondet, Sum, Tree, ModifyNondet};
use crate::machines::{simulate_f, simulate_tf};
use crate::semantics::{
    h_global, h_global_m, h_local, h_local_m, h_nd, h_nd_fwd, h_nil, h_state1, h_states,
};
use crate::translations::{
    Trailed, TrailStack, flatten, local2global, local2global_m, local2trail, run_nd, run_nd_fwd,
    simulate, simulate_t, states2state,
};

use super::ast::{Ast, Families};
use super::generate::Gen;
use super::lower::{IntState, TwoStates, lower};
use super::report::{Report, Verdict, agree, run_trials};

pub type StateSig = StateNondet<i64, NilF>;
pub type ModifySig<S> = ModifyNondet<S, i64, NilF>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    LocalGlobal,
    NondetStateS,
    NondetState,
    StatesState,
    Simulate,
    FusedF,
    Modify,
    Trail,
    SimulateT,
    FusedTF,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::LocalGlobal,
        Theorem::NondetStateS,
        Theorem::NondetState,
        Theorem::StatesState,
        Theorem::Simulate,
        Theorem::FusedF,
        Theorem::Modify,
        Theorem::Trail,
        Theorem::SimulateT,
        Theorem::FusedTF,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::LocalGlobal => "T-localglobal",
            Theorem::NondetStateS => "T-nondetstateS",
            Theorem::NondetState => "T-nondetstate",
            Theorem::StatesState => "T-statesstate",
            Theorem::Simulate => "T-simulate",
            Theorem::FusedF => "T-fusedF",
            Theorem::Modify => "T-modify",
            Theorem::Trail => "T-trail",
            Theorem::SimulateT => "T-simulateT",
            Theorem::FusedTF => "T-fusedTF",
        }
    }

    /// Operation families of the generated programs.
    pub fn families(self) -> Families {
        match self {
            Theorem::NondetStateS => Families::NONDET,
            Theorem::NondetState | Theorem::LocalGlobal | Theorem::Simulate | Theorem::FusedF => {
                Families::STATE_NONDET
            }
            Theorem::StatesState => Families::ALL,
            Theorem::Modify | Theorem::Trail | Theorem::SimulateT | Theorem::FusedTF => Families::MODIFY_NONDET,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Theorem {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL.into_iter().find(|t| t.id() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// A random program and initial state for one trial.
pub(crate) fn sample(seed: u64, depth: u32, fam: Families) -> (Ast, i64) {
    let mut g = Gen::new(seed, fam);
    let p = g.program(1usize << depth, 0);
    (p, g.int())
}

fn lowered<T: super::lower::Target>(p: &Ast) -> Tree<T, i64> {
    lower(p).expect("generated within the target's families")
}

pub(crate) fn local_global_trial(
    l2g: fn(&Tree<StateSig, i64>) -> Tree<StateSig, i64>,
    seed: u64,
    depth: u32,
) -> Verdict {
    let (p, s) = sample(seed, depth, Families::STATE_NONDET);
    let t: Tree<StateSig, i64> = lowered(&p);
    agree(&p, h_nil(&h_global(&l2g(&t), s)), h_nil(&h_local(&t, s)))
}

fn nondet_state_s_trial(seed: u64, depth: u32) -> Verdict {
    let (p, _) = sample(seed, depth, Families::NONDET);
    let t: Tree<NondetF, i64> = lowered(&p);
    agree(&p, run_nd(&t), h_nd(&t))
}

fn nondet_state_trial(seed: u64, depth: u32) -> Verdict {
    let (p, s) = sample(seed, depth, Families::STATE_NONDET);
    let t: Tree<Sum<NondetF, Sum<StateF<i64>, NilF>>, i64> = lowered(&p);
    agree(&p, h_nil(&h_state1(&run_nd_fwd(&t), s)), h_nil(&h_state1(&h_nd_fwd(&t), s)))
}

fn states_state_trial(seed: u64, depth: u32) -> Verdict {
    let mut g = Gen::new(seed, Families::ALL);
    let p = g.program(1usize << depth, 0);
    let (s1, s2) = (g.int(), g.int());
    let t: Tree<TwoStates, i64> = lowered(&p);
    let nested = h_nil(&h_nd_fwd(&flatten(h_states(&t)).run((s1, s2))));
    let merged = h_nil(&h_nd_fwd(&h_state1(&states2state(&t), (s1, s2))));
    agree(&p, nested, merged)
}

fn simulate_trial(seed: u64, depth: u32) -> Verdict {
    let (p, s) = sample(seed, depth, Families::STATE_NONDET);
    let t: Tree<StateSig, i64> = lowered(&p);
    agree(&p, h_nil(&simulate(&t, s)), h_nil(&h_local(&t, s)))
}

fn fused_f_trial(seed: u64, depth: u32) -> Verdict {
    let (p, s) = sample(seed, depth, Families::STATE_NONDET);
    let t: Tree<StateSig, i64> = lowered(&p);
    agree(&p, h_nil(&simulate_f(&t, s)), h_nil(&h_local(&t, s)))
}

pub(crate) fn modify_trial<S: IntState>(seed: u64, depth: u32) -> Verdict {
    let (p, s) = sample(seed, depth, Families::MODIFY_NONDET);
    let t: Tree<ModifySig<S>, i64> = lowered(&p);
    let s = S::of(s);
    agree(&p, h_nil(&h_global_m(&local2global_m(&t), s.clone())), h_nil(&h_local_m(&t, s)))
}

/// Trail-based global handling with a pluggable trail translation.
pub(crate) fn trail_trial<S: IntState>(
    l2t: fn(&Tree<ModifySig<S>, i64>) -> Tree<Trailed<S, i64, NilF>, i64>,
    seed: u64,
    depth: u32,
) -> Verdict {
    let (p, s) = sample(seed, depth, Families::MODIFY_NONDET);
    let t: Tree<ModifySig<S>, i64> = lowered(&p);
    let s = S::of(s);
    let trailed = h_state1(&h_global_m(&l2t(&t), s.clone()), TrailStack::new()).map(|(xs, _)| xs);
    agree(&p, h_nil(&trailed), h_nil(&h_local_m(&t, s)))
}

fn simulate_t_trial(seed: u64, depth: u32) -> Verdict {
    let (p, s) = sample(seed, depth, Families::MODIFY_NONDET);
    let t: Tree<ModifySig<i64>, i64> = lowered(&p);
    agree(&p, h_nil(&simulate_t(&t, s)), h_nil(&h_local_m(&t, s)))
}

fn fused_tf_trial(seed: u64, depth: u32) -> Verdict {
    let (p, s) = sample(seed, depth, Families::MODIFY_NONDET);
    let t: Tree<ModifySig<i64>, i64> = lowered(&p);
    agree(&p, h_nil(&simulate_tf(&t, s)), h_nil(&h_local_m(&t, s)))
}

/// One trial of `th` on the program generated from `seed` at `depth`.
pub fn theorem_trial(th: Theorem, seed: u64, depth: u32) -> Verdict {
    match th {
        Theorem::LocalGlobal => local_global_trial(local2global, seed, depth),
        Theorem::NondetStateS => nondet_state_s_trial(seed, depth),
        Theorem::NondetState => nondet_state_trial(seed, depth),
        Theorem::StatesState => states_state_trial(seed, depth),
        Theorem::Simulate => simulate_trial(seed, depth),
        Theorem::FusedF => fused_f_trial(seed, depth),
        Theorem::Modify => modify_trial::<i64>(seed, depth),
        Theorem::Trail => trail_trial::<i64>(local2trail, seed, depth),
        Theorem::SimulateT => simulate_t_trial(seed, depth),
        Theorem::FusedTF => fused_tf_trial(seed, depth),
    }
}

pub fn check_theorem(th: Theorem, trials: usize, seed: u64, depth: u32) -> Report {
    run_trials(th.id(), trials, seed, depth, &|s, d| theorem_trial(th, s, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for th in Theorem::ALL {
            assert_eq!(th.id().parse::<Theorem>(), Ok(th));
        }
        assert!("T-bogus".parse::<Theorem>().is_err());
    }

    #[test]
    fn every_theorem_holds_on_a_few_programs() {
        for th in Theorem::ALL {
            let r = check_theorem(th, 30, 3, 5);
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}
