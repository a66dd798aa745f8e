//! Auxiliary lemmas behind the equivalences, checked on random programs,
//! stacks and trails.

use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use crate::effect::{NilF, NondetF, StateF, Sum, Tree, Undo, Value, pretty, swap};
use crate::semantics::{h_modify1, h_nd_fwd, h_nil, h_state1, h_state_closed};
use crate::translations::{
    ChoiceStack, ChoiceStackF, TrailEntry, TrailStack, Trailed, append_s, extract_s, extract_ss,
    local2global, local2global_m, local2trail, nondet2state, nondet2state_s, pop_s, pop_ss, push_s,
    push_stack, untrail,
};

use super::ast::{Ast, Families};
use super::generate::Gen;
use super::lower::{Target, cont_fn, lower};
use super::report::{Mismatch, Report, Verdict, agree, run_trials};
use super::theorems::{ModifySig, StateSig, UnknownSuite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    StateRestored,
    ModifyRestored,
    PopExtract,
    StackEval,
    DistBind,
    TrailTracks,
    UntrailUndos,
    StateStackRestored,
}

impl Lemma {
    pub const ALL: [Lemma; 8] = [
        Lemma::StateRestored,
        Lemma::ModifyRestored,
        Lemma::PopExtract,
        Lemma::StackEval,
        Lemma::DistBind,
        Lemma::TrailTracks,
        Lemma::UntrailUndos,
        Lemma::StateStackRestored,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Lemma::StateRestored => "state-restored",
            Lemma::ModifyRestored => "modify-restored",
            Lemma::PopExtract => "pop-extract",
            Lemma::StackEval => "stack-eval",
            Lemma::DistBind => "dist-bind",
            Lemma::TrailTracks => "trail-tracks",
            Lemma::UntrailUndos => "untrail-undos",
            Lemma::StateStackRestored => "state-stack-restored",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Lemma {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Lemma::ALL.into_iter().find(|l| l.id() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

fn lowered<T: Target>(p: &Ast) -> Tree<T, i64> {
    lower(p).expect("generated within the target's families")
}

fn budget(depth: u32) -> usize {
    1usize << depth
}

fn state_restored(seed: u64, depth: u32) -> Verdict {
    let mut g = Gen::new(seed, Families::STATE_NONDET);
    let p = g.program(budget(depth), 0);
    let s = g.int();
    let t: Tree<StateSig, i64> = lowered(&p);
    let (_, end) = h_nil(&h_state1(&h_nd_fwd(&swap(&local2global(&t))), s));
    agree(&p, end, s)
}

fn modify_restored(seed: u64, depth: u32) -> Verdict {
    let mut g = Gen::new(seed, Families::MODIFY_NONDET);
    let p = g.program(budget(depth), 0);
    let s = g.int();
    let t: Tree<ModifySig<i64>, i64> = lowered(&p);
    let (_, end) = h_nil(&h_modify1(&h_nd_fwd(&swap(&local2global_m(&t))), s));
    agree(&p, end, s)
}

type Machine = Tree<StateF<ChoiceStack<i64>>, ()>;

/// A translated program together with its source text.
fn machine(g: &mut Gen, budget: usize) -> (String, Machine) {
    let p = g.program(budget, 0);
    (p.to_string(), nondet2state_s(&lowered::<NondetF>(&p)))
}

/// Results list, pending branches and a text form of the stack sources.
struct StackSetup {
    xs: Vec<i64>,
    stack: Vec<Machine>,
    text: String,
}

impl StackSetup {
    fn new(g: &mut Gen, depth: u32) -> StackSetup {
        let xs: Vec<i64> = (0..g.below(4)).map(|_| g.int()).collect();
        let mut stack = Vec::new();
        let mut texts = Vec::new();
        for _ in 0..g.below(4) {
            let (t, m) = machine(g, budget(depth.saturating_sub(2)));
            texts.push(t);
            stack.push(m);
        }
        let text = format!("xs = {xs:?}; stack (bottom first) = [{}]", texts.join(", "));
        StackSetup { xs, stack, text }
    }

    fn state(&self, extra: &[i64]) -> ChoiceStack<i64> {
        let mut results = self.xs.clone();
        results.extend_from_slice(extra);
        ChoiceStack { results, stack: self.stack.clone() }
    }
}

/// Runs a machine to completion: final results and number of branches left.
fn run_machine(m: &Machine, st: ChoiceStack<i64>) -> (Vec<i64>, usize) {
    let (_, end) = h_state_closed(m).run(st);
    (end.results, end.stack.len())
}

type NdState = Sum<NondetF, Sum<StateF<i64>, NilF>>;
type Residual = Sum<StateF<i64>, NilF>;
type MachineF = Tree<Sum<StateF<ChoiceStackF<Residual, i64>>, Residual>, ()>;

fn run_machine_f(t: &Tree<Residual, ((), ChoiceStackF<Residual, i64>)>, s: i64) -> (Vec<i64>, usize, i64) {
    let (((), end), s) = h_nil(&h_state1(t, s));
    (end.results, end.stack.len(), s)
}

fn pop_extract(seed: u64, depth: u32) -> Verdict {
    let mut g = Gen::new(seed, Families::NONDET);
    let (text, p) = machine(&mut g, budget(depth));
    let setup = StackSetup::new(&mut g, depth);
    let lhs = run_machine(&p, setup.state(&[]));
    let rhs = run_machine(&pop_s(), setup.state(&extract_s(&p)));
    agree(format!("{text} with {}", setup.text), lhs, rhs)?;

    let mut g = Gen::new(seed ^ 0x5555, Families::STATE_NONDET);
    let src = g.program(budget(depth), 0);
    let p: MachineF = nondet2state(&lowered::<NdState>(&src));
    let xs: Vec<i64> = (0..g.below(4)).map(|_| g.int()).collect();
    let stack: Vec<MachineF> =
        (0..g.below(4)).map(|_| nondet2state(&lowered::<NdState>(&g.program(budget(depth.saturating_sub(2)), 0)))).collect();
    let s = g.int();
    let start = ChoiceStackF { results: xs.clone(), stack: stack.clone() };
    let lhs = run_machine_f(&h_state1(&p, start), s);
    let rhs_tree = extract_ss(&p).bind(move |found| {
        let mut results = xs.clone();
        results.extend(found);
        h_state1(&pop_ss(), ChoiceStackF { results, stack: stack.clone() })
    });
    let rhs = run_machine_f(&rhs_tree, s);
    agree(format!("{src} (with residual state {s})"), lhs, rhs)
}

fn stack_eval(seed: u64, depth: u32) -> Verdict {
    let mut g = Gen::new(seed, Families::NONDET);
    let (pt, p) = machine(&mut g, budget(depth.saturating_sub(1)));
    let (qt, q) = machine(&mut g, budget(depth.saturating_sub(1)));
    let x = g.int();
    let setup = StackSetup::new(&mut g, depth);
    let ctx = format!("p = {pt}; q = {qt}; x = {x}; {}", setup.text);

    let lhs = run_machine(&append_s(x, p.clone()), setup.state(&[]));
    let rhs = run_machine(&p, setup.state(&[x]));
    agree(format!("append: {ctx}"), lhs, rhs)?;

    let empty = ChoiceStack { results: setup.xs.clone(), stack: Vec::new() };
    let (unit, end) = h_state_closed(&pop_s()).run(empty);
    agree(format!("pop on an empty stack: {ctx}"), (unit, end.results, end.stack.len()), ((), setup.xs.clone(), 0))?;

    let mut with_q = setup.state(&[]);
    with_q.stack.push(q.clone());
    let lhs = run_machine(&pop_s(), with_q);
    let rhs = run_machine(&q, setup.state(&[]));
    agree(format!("pop on a non-empty stack: {ctx}"), lhs, rhs)?;

    let mut with_q = setup.state(&[]);
    with_q.stack.push(q.clone());
    let lhs = run_machine(&push_s(q, p.clone()), setup.state(&[]));
    let rhs = run_machine(&p, with_q);
    agree(format!("push: {ctx}"), lhs, rhs)
}

fn dist_bind(seed: u64, depth: u32) -> Verdict {
    let half = budget(depth.saturating_sub(1));
    let mut g = Gen::new(seed, Families::STATE_NONDET);
    let (p, k, s) = (g.program(half, 0), g.cont(half, 0, 1), g.int());
    let t: Tree<StateSig, i64> = lowered(&p);
    let kf: Rc<dyn Fn(i64) -> Tree<StateSig, i64>> = Rc::new(cont_fn(&k).expect("state continuation"));
    let k1 = Rc::clone(&kf);
    let lhs = h_state1(&t.bind(move |x| k1(x)), s);
    let rhs = h_state1(&t, s).bind(move |(x, s1)| h_state1(&kf(x), s1));
    agree(format!("state: p = {p}; k = {k}; s = {s}"), pretty(&lhs), pretty(&rhs))?;

    let mut g = Gen::new(seed ^ 0xaaaa, Families::MODIFY_NONDET);
    let (p, k, s) = (g.program(half, 0), g.cont(half, 0, 1), g.int());
    let t: Tree<ModifySig<i64>, i64> = lowered(&p);
    let kf: Rc<dyn Fn(i64) -> Tree<ModifySig<i64>, i64>> = Rc::new(cont_fn(&k).expect("modify continuation"));
    let k1 = Rc::clone(&kf);
    let lhs = h_modify1(&t.bind(move |x| k1(x)), s);
    let rhs = h_modify1(&t, s).bind(move |(x, s1)| h_modify1(&kf(x), s1));
    agree(format!("modify: p = {p}; k = {k}; s = {s}"), pretty(&lhs), pretty(&rhs))
}

type Tr = Trailed<i64, i64, NilF>;

/// Handles nondeterminism, then the program state from `s`, then the trail
/// from `trail`.
pub(crate) fn run_trailed<A: Value>(t: &Tree<Tr, A>, s: i64, trail: TrailStack<i64>) -> ((Vec<A>, i64), TrailStack<i64>) {
    h_nil(&h_state1(&h_modify1(&h_nd_fwd(&swap(t)), s), trail))
}

fn random_trail(g: &mut Gen) -> TrailStack<i64> {
    let entries = (0..g.below(6)).map(|_| if g.below(3) == 0 { TrailEntry::Marker } else { TrailEntry::Delta(g.int()) });
    TrailStack::from_top_first(entries.collect())
}

fn modify_program(g: &mut Gen, depth: u32) -> (Ast, Tree<Tr, i64>) {
    let p = g.program(budget(depth), 0);
    let t = local2trail(&lowered::<ModifySig<i64>>(&p));
    (p, t)
}

fn trail_tracks(seed: u64, depth: u32) -> Verdict {
    let mut g = Gen::new(seed, Families::MODIFY_NONDET);
    let (p, t) = modify_program(&mut g, depth);
    let s = g.int();
    let ((base, _), _) = run_trailed(&t, s, TrailStack::new());
    for _ in 0..2 {
        let trail = random_trail(&mut g);
        let ctx = format!("{p} from state {s} and trail {:?}", trail.top_first());
        let ((xs, end), after) = run_trailed(&t, s, trail.clone());
        agree(&ctx, &xs, &base)?;
        let (old, new) = (trail.top_first(), after.top_first());
        let grown = new.len().checked_sub(old.len()).filter(|&n| new[n..] == old[..]);
        let Some(n) = grown else {
            return Err(Mismatch::new(ctx, new, format!("an extension of {old:?}")));
        };
        let ys = &new[..n];
        let mut expected = s;
        for e in ys.iter().rev() {
            match e {
                TrailEntry::Delta(r) => expected = expected.apply(r),
                TrailEntry::Marker => return Err(Mismatch::new(ctx, ys, "deltas only")),
            }
        }
        agree(&ctx, end, expected)?;
    }
    Ok(())
}

fn untrail_undos(seed: u64, _depth: u32) -> Verdict {
    let mut g = Gen::new(seed, Families::MODIFY_NONDET);
    let ys: Vec<i64> = (0..g.below(5)).map(|_| g.int()).collect();
    let rest = random_trail(&mut g);
    let s = g.int();
    let mut top: Vec<TrailEntry<i64>> = ys.iter().map(|&r| TrailEntry::Delta(r)).collect();
    top.push(TrailEntry::Marker);
    let trail = rest.extended(&top);
    let got = run_trailed(&untrail::<i64, i64, NilF>(), s, trail.clone());
    let expected = ((vec![()], ys.iter().fold(s, |acc, r| acc.revert(r))), rest);
    agree(format!("untrail from state {s} and trail {:?}", trail.top_first()), got, expected)
}

fn state_stack_restored(seed: u64, depth: u32) -> Verdict {
    let mut g = Gen::new(seed, Families::MODIFY_NONDET);
    let (p, t) = modify_program(&mut g, depth);
    let s = g.int();
    let trail = random_trail(&mut g);
    let ((_, s1), t1) = run_trailed(&push_stack::<i64, i64, NilF>(TrailEntry::Marker), s, trail.clone());
    let ((xs, s2), t2) = run_trailed(&t, s1, t1);
    let ((_, s3), t3) = run_trailed(&untrail::<i64, i64, NilF>(), s2, t2);
    let ((direct, _), _) = run_trailed(&t, s, trail.clone());
    agree(
        format!("{p} from state {s} and trail {:?}", trail.top_first()),
        ((xs, s3), t3),
        ((direct, s), trail),
    )
}

fn lemma_trial(l: Lemma, seed: u64, depth: u32) -> Verdict {
    match l {
        Lemma::StateRestored => state_restored(seed, depth),
        Lemma::ModifyRestored => modify_restored(seed, depth),
        Lemma::PopExtract => pop_extract(seed, depth),
        Lemma::StackEval => stack_eval(seed, depth),
        Lemma::DistBind => dist_bind(seed, depth),
        Lemma::TrailTracks => trail_tracks(seed, depth),
        Lemma::UntrailUndos => untrail_undos(seed, depth),
        Lemma::StateStackRestored => state_stack_restored(seed, depth),
    }
}

pub fn check_lemma(l: Lemma, trials: usize, seed: u64, depth: u32) -> Report {
    run_trials(l.id(), trials, seed, depth, &|s, d| lemma_trial(l, s, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_lemma_holds_on_a_few_trials() {
        for l in Lemma::ALL {
            let r = check_lemma(l, 40, 2, 5);
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn untrail_stops_at_the_marker() {
        let trail = TrailStack::from_top_first(vec![
            TrailEntry::Delta(2),
            TrailEntry::Delta(3),
            TrailEntry::Marker,
            TrailEntry::Delta(7),
        ]);
        let got = run_trailed(&untrail::<i64, i64, NilF>(), 10, trail);
        assert_eq!(got, ((vec![()], 5), TrailStack::from_top_first(vec![TrailEntry::Delta(7)])));
    }
}
