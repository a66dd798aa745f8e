use super::{Signature, Sum, SumOp, Tree, Value};

/// Exchanges the first two families of a signature.
pub fn swap<F1: Signature, F2: Signature, R: Signature, A: Value>(
    t: &Tree<Sum<F1, Sum<F2, R>>, A>,
) -> Tree<Sum<F2, Sum<F1, R>>, A> {
    t.fold(Tree::Leaf, |op| {
        Tree::node(match op {
            SumOp::Inl(a) => SumOp::Inr(SumOp::Inl(a)),
            SumOp::Inr(SumOp::Inl(b)) => SumOp::Inl(b),
            SumOp::Inr(SumOp::Inr(c)) => SumOp::Inr(SumOp::Inr(c)),
        })
    })
}

/// Moves the first family behind the next two: `[f1, f2, f3 | rest]`
/// becomes `[f2, f3, f1 | rest]`.
pub fn rotate<F1: Signature, F2: Signature, F3: Signature, R: Signature, A: Value>(
    t: &Tree<Sum<F1, Sum<F2, Sum<F3, R>>>, A>,
) -> Tree<Sum<F2, Sum<F3, Sum<F1, R>>>, A> {
    t.fold(Tree::Leaf, |op| {
        Tree::node(match op {
            SumOp::Inl(a) => SumOp::Inr(SumOp::Inr(SumOp::Inl(a))),
            SumOp::Inr(SumOp::Inl(b)) => SumOp::Inl(b),
            SumOp::Inr(SumOp::Inr(SumOp::Inl(c))) => SumOp::Inr(SumOp::Inl(c)),
            SumOp::Inr(SumOp::Inr(SumOp::Inr(d))) => SumOp::Inr(SumOp::Inr(SumOp::Inr(d))),
        })
    })
}
