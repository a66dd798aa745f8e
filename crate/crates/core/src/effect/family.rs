use std::convert::Infallible;
use std::marker::PhantomData;
use std::rc::Rc;

use super::{Fun, Signature, Value};

/// Reading and overwriting one state value.
pub struct StateF<S>(PhantomData<fn() -> S>);

pub enum StateOp<S, X> {
    Get(Fun<S, X>),
    Put(S, X),
}

impl<S: Value> Signature for StateF<S> {
    type Op<X: 'static> = StateOp<S, X>;

    fn map_op<X: 'static, Y: 'static>(op: &StateOp<S, X>, f: &Rc<dyn Fn(&X) -> Y>) -> StateOp<S, Y> {
        match op {
            StateOp::Get(k) => {
                let (k, f) = (Rc::clone(k), Rc::clone(f));
                StateOp::Get(Rc::new(move |s| f(&k(s))))
            }
            StateOp::Put(s, x) => StateOp::Put(s.clone(), f(x)),
        }
    }
}

/// Failure and binary choice.
pub struct NondetF;

pub enum NondetOp<X> {
    Fail,
    Or(X, X),
}

impl Signature for NondetF {
    type Op<X: 'static> = NondetOp<X>;

    fn map_op<X: 'static, Y: 'static>(op: &NondetOp<X>, f: &Rc<dyn Fn(&X) -> Y>) -> NondetOp<Y> {
        match op {
            NondetOp::Fail => NondetOp::Fail,
            NondetOp::Or(l, r) => NondetOp::Or(f(l), f(r)),
        }
    }
}

/// A state that changes by reversible deltas.
///
/// `s.apply(r).revert(r) == s` must hold for every `s` and `r`.
pub trait Undo<R>: Sized {
    fn apply(&self, r: &R) -> Self;
    fn revert(&self, r: &R) -> Self;
}

impl Undo<i64> for i64 {
    fn apply(&self, r: &i64) -> i64 {
        self.wrapping_add(*r)
    }
    fn revert(&self, r: &i64) -> i64 {
        self.wrapping_sub(*r)
    }
}

/// State access through deltas: read, apply a delta, revert a delta.
pub struct ModifyF<S, R>(PhantomData<fn() -> (S, R)>);

pub enum ModifyOp<S, R, X> {
    MGet(Fun<S, X>),
    Update(R, X),
    Restore(R, X),
}

impl<S: Value, R: Value> Signature for ModifyF<S, R> {
    type Op<X: 'static> = ModifyOp<S, R, X>;

    fn map_op<X: 'static, Y: 'static>(
        op: &ModifyOp<S, R, X>,
        f: &Rc<dyn Fn(&X) -> Y>,
    ) -> ModifyOp<S, R, Y> {
        match op {
            ModifyOp::MGet(k) => {
                let (k, f) = (Rc::clone(k), Rc::clone(f));
                ModifyOp::MGet(Rc::new(move |s| f(&k(s))))
            }
            ModifyOp::Update(r, x) => ModifyOp::Update(r.clone(), f(x)),
            ModifyOp::Restore(r, x) => ModifyOp::Restore(r.clone(), f(x)),
        }
    }
}

/// The empty family. Its operation type has no values.
pub struct NilF;

pub struct NilOp<X>(pub Infallible, PhantomData<X>);

impl<X> NilOp<X> {
    pub fn absurd<T>(&self) -> T {
        match self.0 {}
    }
}

impl Signature for NilF {
    type Op<X: 'static> = NilOp<X>;

    fn map_op<X: 'static, Y: 'static>(op: &NilOp<X>, _: &Rc<dyn Fn(&X) -> Y>) -> NilOp<Y> {
        op.absurd()
    }
}

/// Ordered coproduct: `F` first, then the families of `G`.
pub struct Sum<F, G>(PhantomData<fn() -> (F, G)>);

pub enum SumOp<A, B> {
    Inl(A),
    Inr(B),
}

impl<F: Signature, G: Signature> Signature for Sum<F, G> {
    type Op<X: 'static> = SumOp<F::Op<X>, G::Op<X>>;

    fn map_op<X: 'static, Y: 'static>(op: &Self::Op<X>, f: &Rc<dyn Fn(&X) -> Y>) -> Self::Op<Y> {
        match op {
            SumOp::Inl(a) => SumOp::Inl(F::map_op(a, f)),
            SumOp::Inr(b) => SumOp::Inr(G::map_op(b, f)),
        }
    }
}
