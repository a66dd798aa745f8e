//! Algebraic laws of the effect families, each instantiated with random
//! programs and checked inside a random context `>>= k`.

use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::effect::{NondetF, Tree, Undo, fail, get, mget, or, put, restore, ret, update};
use crate::queens::QueensState;
use crate::semantics::{h_global_with_state, h_local, h_modify1, h_nd, h_nd_fwd, h_nil, h_state1};

use super::ast::{Ast, Cont, Families};
use super::generate::Gen;
use super::lower::{IntState, Target, cont_fn, cont_fn2, lower};
use super::report::{Mismatch, Report, Verdict, find_witness, run_trials};
use super::theorems::{ModifySig, StateSig, UnknownSuite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LawSuite {
    Nondet,
    State,
    LocalState,
    GlobalState,
    Undo,
    Modify,
}

impl LawSuite {
    pub const ALL: [LawSuite; 6] = [
        LawSuite::Nondet,
        LawSuite::State,
        LawSuite::LocalState,
        LawSuite::GlobalState,
        LawSuite::Undo,
        LawSuite::Modify,
    ];

    pub fn id(self) -> &'static str {
        match self {
            LawSuite::Nondet => "nondet",
            LawSuite::State => "state",
            LawSuite::LocalState => "localstate",
            LawSuite::GlobalState => "globalstate",
            LawSuite::Undo => "undo",
            LawSuite::Modify => "modify",
        }
    }

    /// Names of the laws checked by this suite.
    pub fn laws(self) -> &'static [&'static str] {
        match self {
            LawSuite::Nondet => &[
                "fail-or",
                "or-fail",
                "or-assoc",
                "fail-bind",
                "right-distributivity",
                "return-bind",
                "bind-return",
                "bind-assoc",
            ],
            LawSuite::State => &["put-put", "put-get", "get-put", "get-get"],
            LawSuite::LocalState => {
                &["put-right-identity", "put-left-distributivity", "get-right-identity", "get-left-distributivity"]
            }
            LawSuite::GlobalState => &["put-or", "put-put", "put-get"],
            LawSuite::Undo => &["plus-minus (integers)", "plus-minus (queens board)"],
            LawSuite::Modify => &["mget-mget", "update-mget", "restore-mget", "update-restore"],
        }
    }
}

impl fmt::Display for LawSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for LawSuite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LawSuite::ALL.into_iter().find(|l| l.id() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Random ingredients of one trial: three programs, three continuations of
/// one argument, one of two arguments, and two integers.
struct Parts {
    m: Ast,
    n: Ast,
    o: Ast,
    f: Cont,
    g: Cont,
    k: Cont,
    k2: Cont,
    a: i64,
    b: i64,
    s: i64,
}

impl Parts {
    fn new(seed: u64, depth: u32, fam: Families) -> Parts {
        let mut g = Gen::new(seed, fam);
        let budget = ((1usize << depth) / 4).max(1);
        Parts {
            m: g.program(budget, 0),
            n: g.program(budget, 0),
            o: g.program(budget, 0),
            f: g.cont(budget, 0, 1),
            g: g.cont(budget, 0, 1),
            k: g.cont(budget, 0, 1),
            k2: g.cont(budget, 0, 2),
            a: g.int(),
            b: g.int(),
            s: g.int(),
        }
    }

    fn describe(&self, law: &str) -> String {
        format!(
            "{law} with m = {}; n = {}; o = {}; f = {}; g = {}; k = {}; k2 = {}; a = {}; b = {}; s = {}",
            self.m, self.n, self.o, self.f, self.g, self.k, self.k2, self.a, self.b, self.s
        )
    }

    fn prog<T: Target>(&self, p: &Ast) -> Tree<T, i64> {
        lower(p).expect("generated within the target's families")
    }

    fn fun<T: Target>(&self, c: &Cont) -> Rc<dyn Fn(i64) -> Tree<T, i64>> {
        Rc::new(cont_fn(c).expect("generated within the target's families"))
    }

    fn fun2<T: Target>(&self, c: &Cont) -> Rc<dyn Fn(i64, i64) -> Tree<T, i64>> {
        Rc::new(cont_fn2(c).expect("generated within the target's families"))
    }
}

type Law<T> = (&'static str, Tree<T, i64>, Tree<T, i64>);

/// Checks every law in context `>>= k` through `run`.
fn check_all<T: Target, O: PartialEq + fmt::Debug>(
    parts: &Parts,
    laws: Vec<Law<T>>,
    run: impl Fn(&Tree<T, i64>) -> O,
) -> Verdict {
    let k = parts.fun::<T>(&parts.k);
    for (name, lhs, rhs) in laws {
        let (k1, k2) = (Rc::clone(&k), Rc::clone(&k));
        let l = run(&lhs.bind(move |x| k1(x)));
        let r = run(&rhs.bind(move |x| k2(x)));
        if l != r {
            return Err(Mismatch::new(parts.describe(name), l, r));
        }
    }
    Ok(())
}

fn nondet_laws(seed: u64, depth: u32) -> Verdict {
    let p = Parts::new(seed, depth, Families::NONDET);
    let (m, n, o) = (p.prog::<NondetF>(&p.m), p.prog::<NondetF>(&p.n), p.prog::<NondetF>(&p.o));
    let (f, g) = (p.fun::<NondetF>(&p.f), p.fun::<NondetF>(&p.g));
    let (f1, f2, f3, f4, f5) = (Rc::clone(&f), Rc::clone(&f), Rc::clone(&f), Rc::clone(&f), Rc::clone(&f));
    let (g1, g2) = (Rc::clone(&g), Rc::clone(&g));
    let laws: Vec<Law<NondetF>> = vec![
        ("fail-or", or(fail(), m.clone()), m.clone()),
        ("or-fail", or(m.clone(), fail()), m.clone()),
        ("or-assoc", or(or(m.clone(), n.clone()), o.clone()), or(m.clone(), or(n.clone(), o))),
        ("fail-bind", fail::<NondetF, _, i64>().bind(move |x| f1(x)), fail()),
        (
            "right-distributivity",
            or(m.clone(), n.clone()).bind(move |x| f2(x)),
            or(m.bind(move |x| f3(x)), n.bind(move |x| f4(x))),
        ),
        ("return-bind", ret::<NondetF, i64>(p.a).bind(move |x| f5(x)), f(p.a)),
        ("bind-return", m.bind(ret), m.clone()),
        (
            "bind-assoc",
            m.bind({
                let f = Rc::clone(&f);
                move |x| f(x)
            })
            .bind(move |y| g1(y)),
            m.bind(move |x| {
                let g = Rc::clone(&g2);
                f(x).bind(move |y| g(y))
            }),
        ),
    ];
    check_all(&p, laws, h_nd)
}

fn run_state(s: i64) -> impl Fn(&Tree<StateSig, i64>) -> Vec<(i64, i64)> {
    move |t| h_nil(&h_nd_fwd(&h_state1(t, s)))
}

fn state_laws(seed: u64, depth: u32) -> Verdict {
    let p = Parts::new(seed, depth, Families::STATE_NONDET);
    let m = p.prog::<StateSig>(&p.m);
    let f = p.fun::<StateSig>(&p.f);
    let k2 = p.fun2::<StateSig>(&p.k2);
    let (a, b) = (p.a, p.b);
    let (f1, k2a) = (Rc::clone(&f), Rc::clone(&k2));
    let laws: Vec<Law<StateSig>> = vec![
        ("put-put", put::<i64, StateSig, _>(a).then(put(b)).then(m.clone()), put::<i64, StateSig, _>(b).then(m.clone())),
        ("put-get", put::<i64, StateSig, _>(a).then(get()).bind(move |s| f1(s)), put::<i64, StateSig, _>(a).then(f(a))),
        ("get-put", get::<i64, StateSig, _>().bind(put).then(m.clone()), m),
        (
            "get-get",
            get::<i64, StateSig, _>().bind(move |s| {
                let k2 = Rc::clone(&k2a);
                get::<i64, StateSig, _>().bind(move |s2| k2(s, s2))
            }),
            get::<i64, StateSig, _>().bind(move |s| k2(s, s)),
        ),
    ];
    check_all(&p, laws, run_state(p.s))
}

fn local_state_laws(seed: u64, depth: u32) -> Verdict {
    let p = Parts::new(seed, depth, Families::STATE_NONDET);
    let (m, n) = (p.prog::<StateSig>(&p.m), p.prog::<StateSig>(&p.n));
    let (f, g) = (p.fun::<StateSig>(&p.f), p.fun::<StateSig>(&p.g));
    let a = p.a;
    let (f1, g1) = (Rc::clone(&f), Rc::clone(&g));
    let laws: Vec<Law<StateSig>> = vec![
        ("put-right-identity", put::<i64, StateSig, _>(a).then(fail()), fail()),
        (
            "put-left-distributivity",
            put::<i64, StateSig, _>(a).then(or(m.clone(), n.clone())),
            or(put::<i64, StateSig, _>(a).then(m), put::<i64, StateSig, _>(a).then(n)),
        ),
        ("get-right-identity", get::<i64, StateSig, _>().then(fail()), fail()),
        (
            "get-left-distributivity",
            get::<i64, StateSig, _>().bind(move |x| or(f1(x), g1(x))),
            or(get::<i64, StateSig, _>().bind(move |x| f(x)), get::<i64, StateSig, _>().bind(move |x| g(x))),
        ),
    ];
    let s = p.s;
    check_all(&p, laws, move |t| h_nil(&h_local(t, s)))
}

fn put_or(p: &Parts) -> Law<StateSig> {
    let (m, n) = (p.prog::<StateSig>(&p.m), p.prog::<StateSig>(&p.n));
    (
        "put-or",
        or(put::<i64, StateSig, _>(p.a).then(m.clone()), n.clone()),
        put::<i64, StateSig, _>(p.a).then(or(m, n)),
    )
}

fn global_state_laws(seed: u64, depth: u32) -> Verdict {
    let p = Parts::new(seed, depth, Families::STATE_NONDET);
    let m = p.prog::<StateSig>(&p.m);
    let f = p.fun::<StateSig>(&p.f);
    let (a, b) = (p.a, p.b);
    let f1 = Rc::clone(&f);
    let laws: Vec<Law<StateSig>> = vec![
        put_or(&p),
        ("put-put", put::<i64, StateSig, _>(a).then(put(b)).then(m.clone()), put::<i64, StateSig, _>(b).then(m)),
        ("put-get", put::<i64, StateSig, _>(a).then(get()).bind(move |s| f1(s)), put::<i64, StateSig, _>(a).then(f(a))),
    ];
    let s = p.s;
    check_all(&p, laws, move |t| h_nil(&h_global_with_state(t, s)))
}

/// The put-or law under local handling; fails whenever the right branch
/// observes the state.
fn put_or_under_local(seed: u64, depth: u32) -> Verdict {
    let p = Parts::new(seed, depth, Families::STATE_NONDET);
    let s = p.s;
    check_all(&p, vec![put_or(&p)], move |t| h_nil(&h_local(t, s)))
}

/// The plus-minus law for integer states built by `S`, on wide values.
pub(crate) fn undo_int_law<S: IntState>(seed: u64) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let (s, r): (i64, i64) = (rng.random(), rng.random());
        let st = S::of(s);
        let back = st.apply(&r).revert(&r);
        if back != st {
            return Err(Mismatch::new(format!("plus-minus (integers) with s = {s}; r = {r}"), back, st));
        }
    }
    Ok(())
}

fn undo_laws(seed: u64, _depth: u32) -> Verdict {
    undo_int_law::<i64>(seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
    for _ in 0..16 {
        let len = rng.random_range(0..8usize);
        let placed: Vec<i64> = (0..len).map(|_| rng.random_range(1..=8)).collect();
        let st = QueensState { column: len as i64, placed };
        let r = rng.random_range(1..=8);
        let back = st.apply(&r).revert(&r);
        if back != st {
            return Err(Mismatch::new(format!("plus-minus (queens board) with s = {st:?}; r = {r}"), back, st));
        }
    }
    Ok(())
}

type Md = ModifySig<i64>;

fn modify_laws(seed: u64, depth: u32) -> Verdict {
    let p = Parts::new(seed, depth, Families::MODIFY_NONDET);
    let m = p.prog::<Md>(&p.m);
    let k2 = p.fun2::<Md>(&p.k2);
    let r = p.a;
    let k2a = Rc::clone(&k2);
    let laws: Vec<Law<Md>> = vec![
        (
            "mget-mget",
            mget::<i64, i64, Md, _>().bind(move |s| {
                let k2 = Rc::clone(&k2a);
                mget::<i64, i64, Md, _>().bind(move |s2| k2(s, s2))
            }),
            mget::<i64, i64, Md, _>().bind(move |s| k2(s, s)),
        ),
        (
            "update-mget",
            mget::<i64, i64, Md, _>().bind(move |s| update::<i64, i64, Md, _>(r).then(ret(s.apply(&r)))),
            update::<i64, i64, Md, _>(r).then(mget()),
        ),
        (
            "restore-mget",
            mget::<i64, i64, Md, _>().bind(move |s| restore::<i64, i64, Md, _>(r).then(ret(s.revert(&r)))),
            restore::<i64, i64, Md, _>(r).then(mget()),
        ),
        (
            "update-restore",
            update::<i64, i64, Md, _>(r).then(restore::<i64, i64, Md, _>(r)).then(m.clone()),
            m,
        ),
    ];
    let s = p.s;
    check_all(&p, laws, move |t| h_nil(&h_nd_fwd(&h_modify1(t, s))))
}

fn law_trial(suite: LawSuite, seed: u64, depth: u32) -> Verdict {
    match suite {
        LawSuite::Nondet => nondet_laws(seed, depth),
        LawSuite::State => state_laws(seed, depth),
        LawSuite::LocalState => local_state_laws(seed, depth),
        LawSuite::GlobalState => global_state_laws(seed, depth),
        LawSuite::Undo => undo_laws(seed, depth),
        LawSuite::Modify => modify_laws(seed, depth),
    }
}

/// Runs every law of `suite` once per trial. The global-state suite also
/// searches the same trial seeds for a program on which put-or fails under
/// local handling, and reports it as the witness.
pub fn check_laws(suite: LawSuite, trials: usize, seed: u64, depth: u32) -> Report {
    let mut report = run_trials(suite.id(), trials, seed, depth, &|s, d| law_trial(suite, s, d));
    if suite == LawSuite::GlobalState {
        report.witness = find_witness(trials, seed, depth, &put_or_under_local);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_holds_on_a_few_trials() {
        for suite in LawSuite::ALL {
            let r = check_laws(suite, 40, 9, 5);
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn put_or_fails_locally_on_a_known_program() {
        let t: Tree<StateSig, i64> = or(put(1).then(fail()), get());
        let u: Tree<StateSig, i64> = put(1).then(or(fail(), get()));
        assert_eq!(h_nil(&h_local(&t, 0)), vec![0]);
        assert_eq!(h_nil(&h_local(&u, 0)), vec![1]);
        assert_eq!(h_nil(&h_global_with_state(&t, 0)), h_nil(&h_global_with_state(&u, 0)));
    }

    #[test]
    fn global_suite_finds_a_local_witness() {
        let r = check_laws(LawSuite::GlobalState, 100, 4, 6);
        assert!(r.passed(), "{}", r.to_text());
        let w = r.witness.expect("a counterexample under local handling");
        assert!(w.ast_text.starts_with("put-or"));
        assert_ne!(w.lhs, w.rhs);
    }
}
