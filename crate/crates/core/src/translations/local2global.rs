use crate::effect::{
    Signature, StateNondet, StateOp, SumOp, Tree, Value, get, or, put, side,
};

/// A put that undoes itself on backtracking: the right branch restores the
/// previous state and then fails.
pub fn put_r<S: Value, F: Signature>(s: S) -> Tree<StateNondet<S, F>, ()> {
    get().bind(move |old: S| or(put(s.clone()), side(&put(old))))
}

/// Replaces every put with [`put_r`], so that global-state handling of the
/// result behaves like local-state handling of the input.
pub fn local2global<S: Value, F: Signature, A: Value>(
    t: &Tree<StateNondet<S, F>, A>,
) -> Tree<StateNondet<S, F>, A> {
    t.fold(Tree::Leaf, |op| match op {
        SumOp::Inl(StateOp::Put(s, k)) => put_r(s).then(k),
        op => Tree::node(op),
    })
}
