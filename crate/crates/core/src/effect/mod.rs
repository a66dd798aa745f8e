//! Effect trees over ordered coproduct signatures.
//!
//! A [`Tree`] is either a [`Tree::Leaf`] holding a return value or a
//! [`Tree::Node`] holding one operation whose children are the rest of the
//! program. Signatures nest to the right: `Sum<StateF<S>, Sum<NondetF, NilF>>`
//! lists the state family first, then nondeterminism, then the empty family.

mod family;
mod inject;
mod inspect;
mod reorder;

use std::rc::Rc;

pub use family::{
    ModifyF, ModifyOp, NilF, NilOp, NondetF, NondetOp, StateF, StateOp, Sum, SumOp, Undo,
};
pub use inject::{
    Here, Member, There, Whole, choose, fail, get, guard, mget, or, put, restore, ret, side,
    update,
};
pub use inspect::{Inspect, Probe, View, depth, leaves, node_count, pretty, structural_eq};
pub use reorder::{rotate, swap};

/// State and nondeterminism, state first, over a residual signature.
pub type StateNondet<S, F> = Sum<StateF<S>, Sum<NondetF, F>>;
/// Delta-based state and nondeterminism over a residual signature.
pub type ModifyNondet<S, R, F> = Sum<ModifyF<S, R>, Sum<NondetF, F>>;

/// Values that can sit in trees and states.
pub trait Value: Clone + 'static {}
impl<T: Clone + 'static> Value for T {}

/// Shared function value, used for state-indexed continuations.
pub type Fun<X, Y> = Rc<dyn Fn(X) -> Y>;

/// An operation family, or an ordered coproduct of families.
pub trait Signature: 'static {
    /// One operation of the signature with children of type `X`.
    type Op<X: 'static>: 'static;

    /// Maps every child of `op`. Children under a state-indexed continuation
    /// are mapped lazily, when the continuation is applied.
    fn map_op<X: 'static, Y: 'static>(op: &Self::Op<X>, f: &Rc<dyn Fn(&X) -> Y>) -> Self::Op<Y>;
}

/// Syntax tree of an effectful program.
pub enum Tree<F: Signature, A: 'static> {
    Leaf(A),
    Node(Rc<F::Op<Tree<F, A>>>),
}

impl<F: Signature, A: Clone + 'static> Clone for Tree<F, A> {
    fn clone(&self) -> Self {
        match self {
            Tree::Leaf(a) => Tree::Leaf(a.clone()),
            Tree::Node(op) => Tree::Node(Rc::clone(op)),
        }
    }
}

impl<F: Signature, A: Value> Tree<F, A> {
    pub fn leaf(a: A) -> Self {
        Tree::Leaf(a)
    }

    pub fn node(op: F::Op<Tree<F, A>>) -> Self {
        Tree::Node(Rc::new(op))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    /// The fold recursion scheme: leaves go through `leaf`, operation nodes
    /// through `alg` after their children have been folded.
    pub fn fold<B: 'static>(
        &self,
        leaf: impl Fn(A) -> B + 'static,
        alg: impl Fn(F::Op<B>) -> B + 'static,
    ) -> B {
        let leaf: Rc<dyn Fn(A) -> B> = Rc::new(leaf);
        let alg: Rc<dyn Fn(F::Op<B>) -> B> = Rc::new(alg);
        fold_with(self, &leaf, &alg)
    }

    /// Monadic bind: every leaf `x` is replaced by `f(x)`.
    pub fn bind<B: Value>(&self, f: impl Fn(A) -> Tree<F, B> + 'static) -> Tree<F, B> {
        self.fold(f, Tree::node)
    }

    /// `self >> next`.
    pub fn then<B: Value>(&self, next: Tree<F, B>) -> Tree<F, B> {
        self.bind(move |_| next.clone())
    }

    /// Functorial map over leaf values.
    pub fn map<B: Value>(&self, f: impl Fn(A) -> B + 'static) -> Tree<F, B> {
        self.bind(move |a| Tree::Leaf(f(a)))
    }
}

pub(crate) fn fold_with<F: Signature, A: Value, B: 'static>(
    t: &Tree<F, A>,
    leaf: &Rc<dyn Fn(A) -> B>,
    alg: &Rc<dyn Fn(F::Op<B>) -> B>,
) -> B {
    match t {
        Tree::Leaf(a) => leaf(a.clone()),
        Tree::Node(op) => {
            let (l, g) = (Rc::clone(leaf), Rc::clone(alg));
            let rec: Rc<dyn Fn(&Tree<F, A>) -> B> = Rc::new(move |c| fold_with(c, &l, &g));
            alg(F::map_op(op, &rec))
        }
    }
}

/// Builds an operation node in the first family of a sum.
pub fn inl<F: Signature, G: Signature, A: Value>(op: F::Op<Tree<Sum<F, G>, A>>) -> Tree<Sum<F, G>, A> {
    Tree::node(SumOp::Inl(op))
}

/// Forwards an operation of the residual signature unchanged.
pub fn inr<F: Signature, G: Signature, A: Value>(op: G::Op<Tree<Sum<F, G>, A>>) -> Tree<Sum<F, G>, A> {
    Tree::node(SumOp::Inr(op))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Nd = Tree<NondetF, i64>;

    fn list_of(t: &Nd) -> Vec<i64> {
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

    #[test]
    fn fold_on_leaf_uses_generator() {
        let t: Nd = ret(7);
        assert_eq!(t.fold(|x| x, |_| 0), 7);
    }

    #[test]
    fn fold_concatenates_or_branches() {
        let t: Nd = or(ret(1), ret(2));
        assert_eq!(list_of(&t), vec![1, 2]);
    }

    #[test]
    fn bind_on_leaf_applies_function() {
        let t: Nd = ret(3);
        assert!(structural_eq(&t.bind(|x| ret(x + 1)), &ret(4)));
    }

    #[test]
    fn bind_maps_leaves_under_or() {
        let t: Nd = or(ret(1), ret(2));
        let want: Nd = or(ret(10), ret(20));
        assert!(structural_eq(&t.bind(|x| ret(x * 10)), &want));
    }

    #[test]
    fn choose_is_right_nested_or_ending_in_fail() {
        let t: Nd = choose(vec![1, 2, 3]);
        let want: Nd = or(ret(1), or(ret(2), or(ret(3), fail())));
        assert!(structural_eq(&t, &want));
        assert!(structural_eq(&choose::<NondetF, _, i64>(vec![]), &fail::<NondetF, _, i64>()));
    }

    #[test]
    fn guard_true_is_unit_leaf() {
        let t: Tree<NondetF, ()> = guard(true);
        assert!(matches!(t, Tree::Leaf(())));
        let f: Tree<NondetF, ()> = guard(false);
        assert!(structural_eq(&f, &fail()));
    }
}
