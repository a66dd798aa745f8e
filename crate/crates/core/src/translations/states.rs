//! Merging two state families into one state of pairs.

use crate::effect::{Signature, StateF, StateOp, Sum, SumOp, Tree, Value, get, put};
use crate::semantics::StateRun;

/// Gets and puts of the first family touch the first component of the pair,
/// those of the second family the second component.
pub fn states2state<S1: Value, S2: Value, F: Signature, A: Value>(
    t: &Tree<Sum<StateF<S1>, Sum<StateF<S2>, F>>, A>,
) -> Tree<Sum<StateF<(S1, S2)>, F>, A> {
    t.fold(Tree::Leaf, |op| match op {
        SumOp::Inl(StateOp::Get(k)) => get().bind(move |(s1, _): (S1, S2)| k(s1)),
        SumOp::Inl(StateOp::Put(s1, k)) => get().bind(move |(_, s2): (S1, S2)| {
            put((s1.clone(), s2)).then(k.clone())
        }),
        SumOp::Inr(SumOp::Inl(StateOp::Get(k))) => get().bind(move |(_, s2): (S1, S2)| k(s2)),
        SumOp::Inr(SumOp::Inl(StateOp::Put(s2, k))) => get().bind(move |(s1, _): (S1, S2)| {
            put((s1, s2.clone())).then(k.clone())
        }),
        SumOp::Inr(SumOp::Inr(op)) => Tree::node(SumOp::Inr(op)),
    })
}

pub fn alpha<A, X, Y>(((a, x), y): ((A, X), Y)) -> (A, (X, Y)) {
    (a, (x, y))
}

pub fn alpha_inv<A, X, Y>((a, (x, y)): (A, (X, Y))) -> ((A, X), Y) {
    ((a, x), y)
}

type Nested<S1, S2, F, A> = StateRun<S1, StateRun<S2, Tree<F, ((A, S1), S2)>>>;
type Flat<S1, S2, F, A> = StateRun<(S1, S2), Tree<F, (A, (S1, S2))>>;

pub fn flatten<S1: Value, S2: Value, F: Signature, A: Value>(t: Nested<S1, S2, F, A>) -> Flat<S1, S2, F, A> {
    StateRun::new(move |(s1, s2)| t.run(s1).run(s2).map(alpha))
}

pub fn nest<S1: Value, S2: Value, F: Signature, A: Value>(t: Flat<S1, S2, F, A>) -> Nested<S1, S2, F, A> {
    StateRun::new(move |s1: S1| {
        let t = t.clone();
        StateRun::new(move |s2| t.run((s1.clone(), s2)).map(alpha_inv))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::{Here, NilF, There};
    use crate::semantics::{h_nil, h_state1, h_states};

    type Two = Sum<StateF<i64>, Sum<StateF<i64>, NilF>>;

    #[test]
    fn first_put_then_second_get() {
        let t: Tree<Two, i64> =
            put::<i64, Two, Here>(10).then(get::<i64, Two, There<Here>>());
        assert_eq!(h_nil(&h_state1(&states2state(&t), (1, 2))), (2, (10, 2)));
    }

    #[test]
    fn flattened_nested_run_matches_merged_run() {
        let t: Tree<Two, i64> = get::<i64, Two, Here>()
            .bind(|a| put::<i64, Two, There<Here>>(a + 1).then(get::<i64, Two, There<Here>>()));
        let lhs = h_nil(&flatten(h_states(&t)).run((3, 0)));
        let rhs = h_nil(&h_state1(&states2state(&t), (3, 0)));
        assert_eq!(lhs, rhs);
    }
}
