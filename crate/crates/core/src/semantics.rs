//! Handlers: folds that interpret effect trees.
//!
//! Handlers over a residual signature return trees in the remaining
//! families, so they compose by plain function application. The `*1`
//! variants run a state handler from a given initial state.

use std::rc::Rc;

use crate::effect::{
    ModifyF, ModifyNondet, ModifyOp, NilF, NondetF, NondetOp, Signature, StateF, StateNondet,
    StateOp, Sum, SumOp, Tree, Undo, Value, swap,
};
use crate::translations::trail::{TrailStack, local2trail};

/// A state-passing computation `S -> T`.
pub struct StateRun<S, T>(Rc<dyn Fn(S) -> T>);

impl<S, T> Clone for StateRun<S, T> {
    fn clone(&self) -> Self {
        StateRun(Rc::clone(&self.0))
    }
}

impl<S: 'static, T: 'static> StateRun<S, T> {
    pub fn new(f: impl Fn(S) -> T + 'static) -> Self {
        StateRun(Rc::new(f))
    }

    pub fn run(&self, s: S) -> T {
        (self.0)(s)
    }
}

/// List semantics of pure nondeterminism.
pub fn h_nd<A: Value>(t: &Tree<NondetF, A>) -> Vec<A> {
    t.fold(
        |x| vec![x],
        |op| match op {
            NondetOp::Fail => vec![],
            NondetOp::Or(mut l, r) => {
                l.extend(r);
                l
            }
        },
    )
}

/// Nondeterminism to lists, forwarding the residual operations.
pub fn h_nd_fwd<F: Signature, A: Value>(t: &Tree<Sum<NondetF, F>, A>) -> Tree<F, Vec<A>> {
    t.fold(
        |x| Tree::Leaf(vec![x]),
        |op| match op {
            SumOp::Inl(NondetOp::Fail) => Tree::Leaf(vec![]),
            SumOp::Inl(NondetOp::Or(p, q)) => p.bind(move |xs| {
                q.map(move |ys| {
                    let mut all = xs.clone();
                    all.extend(ys);
                    all
                })
            }),
            SumOp::Inr(op) => Tree::node(op),
        },
    )
}

/// Residual trees over the empty signature are always leaves.
pub fn h_nil<A: Value>(t: &Tree<NilF, A>) -> A {
    match t {
        Tree::Leaf(a) => a.clone(),
        Tree::Node(op) => op.absurd(),
    }
}

fn forward<S: Value, F: Signature, B: Value>(
    op: F::Op<StateRun<S, Tree<F, B>>>,
) -> StateRun<S, Tree<F, B>> {
    let op = Rc::new(op);
    StateRun::new(move |s: S| {
        let resume: Rc<dyn Fn(&StateRun<S, Tree<F, B>>) -> Tree<F, B>> =
            Rc::new(move |k| k.run(s.clone()));
        Tree::node(F::map_op(&op, &resume))
    })
}

/// State handler with forwarding.
pub fn h_state<S: Value, F: Signature, A: Value>(
    t: &Tree<Sum<StateF<S>, F>, A>,
) -> StateRun<S, Tree<F, (A, S)>> {
    t.fold(
        |x| StateRun::new(move |s| Tree::Leaf((x.clone(), s))),
        |op| match op {
            SumOp::Inl(StateOp::Get(k)) => StateRun::new(move |s: S| k(s.clone()).run(s)),
            SumOp::Inl(StateOp::Put(s1, k)) => StateRun::new(move |_| k.run(s1.clone())),
            SumOp::Inr(op) => forward(op),
        },
    )
}

pub fn h_state1<S: Value, F: Signature, A: Value>(
    t: &Tree<Sum<StateF<S>, F>, A>,
    s: S,
) -> Tree<F, (A, S)> {
    h_state(t).run(s)
}

/// State handler for trees whose only family is state.
pub fn h_state_closed<S: Value, A: Value>(t: &Tree<StateF<S>, A>) -> StateRun<S, (A, S)> {
    t.fold(
        |x| StateRun::new(move |s| (x.clone(), s)),
        |op| match op {
            StateOp::Get(k) => StateRun::new(move |s: S| k(s.clone()).run(s)),
            StateOp::Put(s1, k) => StateRun::new(move |_| k.run(s1.clone())),
        },
    )
}

/// Delta-based state handler with forwarding.
pub fn h_modify<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<Sum<ModifyF<S, R>, F>, A>,
) -> StateRun<S, Tree<F, (A, S)>> {
    t.fold(
        |x| StateRun::new(move |s| Tree::Leaf((x.clone(), s))),
        |op| match op {
            SumOp::Inl(ModifyOp::MGet(k)) => StateRun::new(move |s: S| k(s.clone()).run(s)),
            SumOp::Inl(ModifyOp::Update(r, k)) => StateRun::new(move |s: S| k.run(s.apply(&r))),
            SumOp::Inl(ModifyOp::Restore(r, k)) => StateRun::new(move |s: S| k.run(s.revert(&r))),
            SumOp::Inr(op) => forward(op),
        },
    )
}

pub fn h_modify1<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<Sum<ModifyF<S, R>, F>, A>,
    s: S,
) -> Tree<F, (A, S)> {
    h_modify(t).run(s)
}

fn firsts<A: Value, S: Value>(xs: Vec<(A, S)>) -> Vec<A> {
    xs.into_iter().map(|(a, _)| a).collect()
}

/// Local state: the state handler runs first, so every branch owns a copy.
pub fn h_local<S: Value, F: Signature, A: Value>(
    t: &Tree<StateNondet<S, F>, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    h_nd_fwd(&h_state1(t, s)).map(firsts)
}

/// Global state: nondeterminism is handled first and one state is threaded
/// through all branches. Also returns the final state.
pub fn h_global_with_state<S: Value, F: Signature, A: Value>(
    t: &Tree<StateNondet<S, F>, A>,
    s: S,
) -> Tree<F, (Vec<A>, S)> {
    h_state1(&h_nd_fwd(&swap(t)), s)
}

pub fn h_global<S: Value, F: Signature, A: Value>(
    t: &Tree<StateNondet<S, F>, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    h_global_with_state(t, s).map(|(xs, _)| xs)
}

pub fn h_local_m<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    h_nd_fwd(&h_modify1(t, s)).map(firsts)
}

pub fn h_global_m_with_state<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
    s: S,
) -> Tree<F, (Vec<A>, S)> {
    h_modify1(&h_nd_fwd(&swap(t)), s)
}

pub fn h_global_m<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    h_global_m_with_state(t, s).map(|(xs, _)| xs)
}

/// Two nested state handlers, first family outermost.
pub fn h_states<S1: Value, S2: Value, F: Signature, A: Value>(
    t: &Tree<Sum<StateF<S1>, Sum<StateF<S2>, F>>, A>,
) -> StateRun<S1, StateRun<S2, Tree<F, ((A, S1), S2)>>> {
    let outer = h_state(t);
    StateRun::new(move |s1| {
        let inner = h_state(&outer.run(s1));
        StateRun::new(move |s2| inner.run(s2))
    })
}

/// Global state with a trail stack that undoes updates on backtracking.
pub fn h_global_t<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    h_state1(&h_global_m(&local2trail(t), s), TrailStack::new()).map(|(xs, _)| xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::{choose, fail, get, mget, or, put, ret, update};

    type St = StateNondet<i64, NilF>;
    type Md = ModifyNondet<i64, i64, NilF>;

    #[test]
    fn nondeterminism_to_lists() {
        assert_eq!(h_nd::<i64>(&fail()), Vec::<i64>::new());
        assert_eq!(h_nd(&or(ret(1), or(ret(2), ret(3)))), vec![1, 2, 3]);
        for n in 0..=10 {
            let xs: Vec<i64> = (1..=n).collect();
            assert_eq!(h_nd(&choose(xs.clone())), xs);
        }
    }

    #[test]
    fn state_handler_reads_and_writes() {
        let t: Tree<Sum<StateF<i64>, NilF>, i64> = get();
        assert_eq!(h_nil(&h_state1(&t, 5)), (5, 5));
        let t: Tree<Sum<StateF<i64>, NilF>, i64> = put(9).then(get());
        assert_eq!(h_nil(&h_state1(&t, 0)), (9, 9));
        for s in -50..50 {
            let t: Tree<Sum<StateF<i64>, NilF>, ()> = get().bind(put);
            assert_eq!(h_nil(&h_state1(&t, s)), ((), s));
        }
    }

    #[test]
    fn forwarded_fail_is_an_empty_list() {
        let t: Tree<Sum<NondetF, NilF>, i64> = fail();
        assert_eq!(h_nil(&h_nd_fwd(&t)), Vec::<i64>::new());
    }

    #[test]
    fn forwarding_keeps_residual_get_outside() {
        let t: Tree<Sum<NondetF, Sum<StateF<i64>, NilF>>, i64> = or(get(), ret(1));
        let r = h_nd_fwd(&t);
        assert!(matches!(&r, Tree::Node(op) if matches!(**op, SumOp::Inl(StateOp::Get(_)))));
        assert_eq!(h_nil(&h_state1(&r, 4)), (vec![4, 1], 4));
    }

    #[test]
    fn local_state_branches_keep_their_own_copy() {
        let t: Tree<St, i64> = put(42).then(or(put(21).then(get()), get()));
        assert_eq!(h_nil(&h_local(&t, 0)), vec![21, 42]);
        assert_eq!(h_nil(&h_local::<i64, NilF, i64>(&fail(), 3)), Vec::<i64>::new());
    }

    #[test]
    fn global_state_is_shared_and_reported() {
        let t: Tree<St, i64> = or(put(1).then(get()), get());
        assert_eq!(h_nil(&h_global(&t, 0)), vec![1, 1]);
        let t: Tree<St, i64> = put(7).then(fail());
        assert_eq!(h_nil(&h_global_with_state(&t, 0)), (vec![], 7));
    }

    #[test]
    fn modify_handlers() {
        let t: Tree<Sum<ModifyF<i64, i64>, NilF>, i64> = update(3).then(mget());
        assert_eq!(h_nil(&h_modify1(&t, 10)), (13, 13));
        let t: Tree<Md, i64> = or(update(1).then(mget()), mget());
        assert_eq!(h_nil(&h_local_m(&t, 0)), vec![1, 0]);
        assert_eq!(h_nil(&h_global_m(&t, 0)), vec![1, 1]);
        assert_eq!(h_nil(&h_global_t(&t, 0)), vec![1, 0]);
        assert_eq!(h_nil(&h_global_t::<i64, i64, NilF, i64>(&fail(), 2)), Vec::<i64>::new());
    }

    #[test]
    fn two_state_handler() {
        type Two = Sum<StateF<i64>, Sum<StateF<i64>, NilF>>;
        let t: Tree<Two, i64> = crate::effect::get::<i64, Two, crate::effect::Here>();
        assert_eq!(h_nil(&h_states(&t).run(7).run(9)), ((7, 7), 9));
        let t: Tree<Two, i64> = crate::effect::put::<i64, Two, crate::effect::There<crate::effect::Here>>(5)
            .then(crate::effect::get::<i64, Two, crate::effect::There<crate::effect::Here>>());
        assert_eq!(h_nil(&h_states(&t).run(1).run(2)), ((5, 1), 5));
    }
}
