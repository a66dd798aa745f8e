//! Deliberately broken variants of library components. Each must be caught
//! by one of the suites; a report with failures means the bug was detected.

use std::fmt;
use std::str::FromStr;

use crate::effect::{
    ModifyOp, NilF, NondetOp, Probe, SumOp, Tree, Undo, fail, or, update,
};
use crate::translations::{TrailEntry, Trailed, local2trail, push_stack, untrail};

use super::lower::IntState;
use super::report::{Report, run_trials};
use super::theorems::{ModifySig, StateSig, UnknownSuite, local_global_trial, trail_trial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutant {
    /// The local-to-global translation keeps plain puts.
    SkipRestoringPut,
    /// The trail translation pushes no marker before a left branch.
    UnmarkedBranch,
    /// Integer deltas are reverted by applying them again.
    RevertAsApply,
}

impl Mutant {
    pub const ALL: [Mutant; 3] = [Mutant::SkipRestoringPut, Mutant::UnmarkedBranch, Mutant::RevertAsApply];

    pub fn id(self) -> &'static str {
        match self {
            Mutant::SkipRestoringPut => "skip-restoring-put",
            Mutant::UnmarkedBranch => "unmarked-branch",
            Mutant::RevertAsApply => "revert-as-apply",
        }
    }

    /// The suite whose check is run against the broken component.
    pub fn detector(self) -> &'static str {
        match self {
            Mutant::SkipRestoringPut => "T-localglobal",
            Mutant::UnmarkedBranch | Mutant::RevertAsApply => "T-trail",
        }
    }
}

impl fmt::Display for Mutant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Mutant {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutant::ALL.into_iter().find(|m| m.id() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

fn keep_puts(t: &Tree<StateSig, i64>) -> Tree<StateSig, i64> {
    t.clone()
}

fn local2trail_unmarked(t: &Tree<ModifySig<i64>, i64>) -> Tree<Trailed<i64, i64, NilF>, i64> {
    t.fold(Tree::Leaf, |op| match op {
        SumOp::Inl(ModifyOp::Update(r, k)) => {
            push_stack(TrailEntry::Delta(r)).then(update::<i64, i64, _, _>(r)).then(k)
        }
        SumOp::Inl(op) => Tree::node(SumOp::Inl(op)),
        SumOp::Inr(SumOp::Inl(NondetOp::Fail)) => fail(),
        SumOp::Inr(SumOp::Inl(NondetOp::Or(p, q))) => or(p, untrail().then(q)),
        SumOp::Inr(SumOp::Inr(op)) => op.absurd(),
    })
}

/// An integer whose revert re-applies the delta.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkewedInt(pub i64);

impl Undo<i64> for SkewedInt {
    fn apply(&self, r: &i64) -> SkewedInt {
        SkewedInt(self.0.wrapping_add(*r))
    }
    fn revert(&self, r: &i64) -> SkewedInt {
        SkewedInt(self.0.wrapping_add(*r))
    }
}

impl Probe for SkewedInt {
    fn probes() -> Vec<SkewedInt> {
        i64::probes().into_iter().map(SkewedInt).collect()
    }
}

impl IntState for SkewedInt {
    fn of(v: i64) -> Self {
        SkewedInt(v)
    }
    fn int(&self) -> i64 {
        self.0
    }
}

/// Runs the detecting suite against the broken component.
pub fn check_mutant(m: Mutant, trials: usize, seed: u64, depth: u32) -> Report {
    let check = |s: u64, d: u32| match m {
        Mutant::SkipRestoringPut => local_global_trial(keep_puts, s, d),
        Mutant::UnmarkedBranch => trail_trial::<i64>(local2trail_unmarked, s, d),
        Mutant::RevertAsApply => trail_trial::<SkewedInt>(local2trail, s, d),
    };
    run_trials(m.id(), trials, seed, depth, &check)
}
