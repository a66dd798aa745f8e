use std::marker::PhantomData;
use std::rc::Rc;

use super::{
    ModifyF, ModifyOp, NondetF, NondetOp, Signature, StateF, StateOp, Sum, SumOp, Tree, Value,
};

/// Index marker: the signature is the family itself.
pub struct Whole;
/// Index marker: the family is the first summand.
pub struct Here;
/// Index marker: the family sits inside the second summand at `I`.
pub struct There<I>(PhantomData<I>);

/// `Self` contains family `G` at position `I`.
pub trait Member<G: Signature, I>: Signature {
    fn inject<X: 'static>(op: G::Op<X>) -> Self::Op<X>;
}

impl<G: Signature> Member<G, Whole> for G {
    fn inject<X: 'static>(op: G::Op<X>) -> G::Op<X> {
        op
    }
}

impl<G: Signature, R: Signature> Member<G, Here> for Sum<G, R> {
    fn inject<X: 'static>(op: G::Op<X>) -> Self::Op<X> {
        SumOp::Inl(op)
    }
}

impl<G: Signature, H: Signature, R: Member<G, I>, I> Member<G, There<I>> for Sum<H, R> {
    fn inject<X: 'static>(op: G::Op<X>) -> Self::Op<X> {
        SumOp::Inr(R::inject(op))
    }
}

fn send<G: Signature, F: Member<G, I>, I, A: Value>(op: G::Op<Tree<F, A>>) -> Tree<F, A> {
    Tree::node(F::inject(op))
}

pub fn ret<F: Signature, A: Value>(a: A) -> Tree<F, A> {
    Tree::Leaf(a)
}

pub fn get<S: Value, F: Member<StateF<S>, I>, I>() -> Tree<F, S> {
    send::<StateF<S>, F, I, S>(StateOp::Get(Rc::new(Tree::Leaf)))
}

pub fn put<S: Value, F: Member<StateF<S>, I>, I>(s: S) -> Tree<F, ()> {
    send::<StateF<S>, F, I, ()>(StateOp::Put(s, Tree::Leaf(())))
}

pub fn fail<F: Member<NondetF, I>, I, A: Value>() -> Tree<F, A> {
    send::<NondetF, F, I, A>(NondetOp::Fail)
}

pub fn or<F: Member<NondetF, I>, I, A: Value>(l: Tree<F, A>, r: Tree<F, A>) -> Tree<F, A> {
    send::<NondetF, F, I, A>(NondetOp::Or(l, r))
}

pub fn mget<S: Value, R: Value, F: Member<ModifyF<S, R>, I>, I>() -> Tree<F, S> {
    send::<ModifyF<S, R>, F, I, S>(ModifyOp::MGet(Rc::new(Tree::Leaf)))
}

pub fn update<S: Value, R: Value, F: Member<ModifyF<S, R>, I>, I>(r: R) -> Tree<F, ()> {
    send::<ModifyF<S, R>, F, I, ()>(ModifyOp::Update(r, Tree::Leaf(())))
}

pub fn restore<S: Value, R: Value, F: Member<ModifyF<S, R>, I>, I>(r: R) -> Tree<F, ()> {
    send::<ModifyF<S, R>, F, I, ()>(ModifyOp::Restore(r, Tree::Leaf(())))
}

/// `foldr ((|||) . ret) fail`.
pub fn choose<F: Member<NondetF, I>, I, A: Value>(xs: Vec<A>) -> Tree<F, A> {
    xs.into_iter()
        .rev()
        .fold(fail(), |acc, x| or(Tree::Leaf(x), acc))
}

pub fn guard<F: Member<NondetF, I>, I>(b: bool) -> Tree<F, ()> {
    if b { Tree::Leaf(()) } else { fail() }
}

/// Runs `t` for its effects, then fails.
pub fn side<F: Member<NondetF, I>, I, A: Value, B: Value>(t: &Tree<F, A>) -> Tree<F, B> {
    t.then(fail())
}
