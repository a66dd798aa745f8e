//! Lowering random programs into effect trees over a chosen signature.

use std::fmt::Debug;
use std::rc::Rc;
use std::sync::Arc;

use crate::effect::{
    Here, Inspect, Member, ModifyF, NilF, NondetF, Probe, StateF, Sum, There, Tree, Undo, Value,
    fail, get, mget, or, put, update,
};

use super::ast::{Ast, Cont, Families};

/// Integer-like program states with integer deltas.
pub trait IntState: Value + Undo<i64> + PartialEq + Debug + Probe {
    fn of(v: i64) -> Self;
    fn int(&self) -> i64;
}

impl IntState for i64 {
    fn of(v: i64) -> i64 {
        v
    }
    fn int(&self) -> i64 {
        *self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("program uses {used} but the target signature only provides {available}")]
pub struct ShapeError {
    pub used: Families,
    pub available: Families,
}

type K<T> = Rc<dyn Fn(i64) -> Tree<T, i64>>;

/// A signature that programs can be lowered into. Operations outside
/// [`Target::PROVIDES`] are never requested by [`lower`].
pub trait Target: Inspect + Sized {
    const PROVIDES: Families;

    fn get(_: K<Self>) -> Tree<Self, i64> {
        unreachable!("shape checked before lowering")
    }
    fn put(_: i64, _: Tree<Self, i64>) -> Tree<Self, i64> {
        unreachable!("shape checked before lowering")
    }
    fn fail() -> Tree<Self, i64> {
        unreachable!("shape checked before lowering")
    }
    fn or(_: Tree<Self, i64>, _: Tree<Self, i64>) -> Tree<Self, i64> {
        unreachable!("shape checked before lowering")
    }
    fn mget(_: K<Self>) -> Tree<Self, i64> {
        unreachable!("shape checked before lowering")
    }
    fn update(_: i64, _: Tree<Self, i64>) -> Tree<Self, i64> {
        unreachable!("shape checked before lowering")
    }
}

fn via_get<T: Member<StateF<S>, I>, I, S: IntState>(k: K<T>) -> Tree<T, i64> {
    get::<S, T, I>().bind(move |s| k(s.int()))
}

fn via_put<T: Member<StateF<S>, I>, I, S: IntState>(v: i64, k: Tree<T, i64>) -> Tree<T, i64> {
    put::<S, T, I>(S::of(v)).then(k)
}

fn via_mget<T: Member<ModifyF<S, i64>, I>, I, S: IntState>(k: K<T>) -> Tree<T, i64> {
    mget::<S, i64, T, I>().bind(move |s| k(s.int()))
}

fn via_update<T: Member<ModifyF<S, i64>, I>, I, S: IntState>(v: i64, k: Tree<T, i64>) -> Tree<T, i64> {
    update::<S, i64, T, I>(v).then(k)
}

macro_rules! nondet_via {
    ($idx:ty) => {
        fn fail() -> Tree<Self, i64> {
            fail::<Self, $idx, i64>()
        }
        fn or(l: Tree<Self, i64>, r: Tree<Self, i64>) -> Tree<Self, i64> {
            or::<Self, $idx, i64>(l, r)
        }
    };
}

macro_rules! state_via {
    ($s:ty, $idx:ty) => {
        fn get(k: K<Self>) -> Tree<Self, i64> {
            via_get::<Self, $idx, $s>(k)
        }
        fn put(v: i64, k: Tree<Self, i64>) -> Tree<Self, i64> {
            via_put::<Self, $idx, $s>(v, k)
        }
    };
}

macro_rules! modify_via {
    ($s:ty, $idx:ty) => {
        fn mget(k: K<Self>) -> Tree<Self, i64> {
            via_mget::<Self, $idx, $s>(k)
        }
        fn update(v: i64, k: Tree<Self, i64>) -> Tree<Self, i64> {
            via_update::<Self, $idx, $s>(v, k)
        }
    };
}

impl Target for NondetF {
    const PROVIDES: Families = Families::NONDET;
    nondet_via!(crate::effect::Whole);
}

impl Target for Sum<NondetF, NilF> {
    const PROVIDES: Families = Families::NONDET;
    nondet_via!(Here);
}

impl<S: IntState> Target for Sum<StateF<S>, NilF> {
    const PROVIDES: Families = Families::STATE;
    state_via!(S, Here);
}

impl<S: IntState> Target for Sum<StateF<S>, Sum<NondetF, NilF>> {
    const PROVIDES: Families = Families::STATE_NONDET;
    state_via!(S, Here);
    nondet_via!(There<Here>);
}

impl<S: IntState> Target for Sum<NondetF, Sum<StateF<S>, NilF>> {
    const PROVIDES: Families = Families::STATE_NONDET;
    state_via!(S, There<Here>);
    nondet_via!(Here);
}

impl<S: IntState> Target for Sum<ModifyF<S, i64>, NilF> {
    const PROVIDES: Families = Families::MODIFY;
    modify_via!(S, Here);
}

impl<S: IntState> Target for Sum<ModifyF<S, i64>, Sum<NondetF, NilF>> {
    const PROVIDES: Families = Families::MODIFY_NONDET;
    modify_via!(S, Here);
    nondet_via!(There<Here>);
}

/// Two independent integer states and nondeterminism. Get and put act on the
/// first state; mget and update act on the second through its get and put.
pub type TwoStates = Sum<StateF<i64>, Sum<StateF<i64>, Sum<NondetF, NilF>>>;

impl Target for TwoStates {
    const PROVIDES: Families = Families::ALL;
    state_via!(i64, Here);
    nondet_via!(There<There<Here>>);

    fn mget(k: K<Self>) -> Tree<Self, i64> {
        via_get::<Self, There<Here>, i64>(k)
    }

    fn update(v: i64, k: Tree<Self, i64>) -> Tree<Self, i64> {
        get::<i64, Self, There<Here>>()
            .bind(move |s| put::<i64, Self, There<Here>>(s.wrapping_add(v)))
            .then(k)
    }
}

/// Lowers `ast` with no variables in scope.
pub fn lower<T: Target>(ast: &Ast) -> Result<Tree<T, i64>, ShapeError> {
    check::<T>(ast)?;
    Ok(build(ast, &[]))
}

/// Lowers a continuation applied to `args`, under the environment `env`.
pub fn lower_cont<T: Target>(c: &Cont, env: &[i64], args: &[i64]) -> Result<Tree<T, i64>, ShapeError> {
    check::<T>(&c.body)?;
    let mut full = env[..c.base].to_vec();
    full.extend_from_slice(args);
    Ok(build(&c.body, &full))
}

/// A continuation as a function, for binding after a program.
pub fn cont_fn<T: Target>(c: &Cont) -> Result<impl Fn(i64) -> Tree<T, i64> + use<T>, ShapeError> {
    check::<T>(&c.body)?;
    let c = c.clone();
    Ok(move |x| build(&c.body, &[x]))
}

/// A two-argument continuation as a function.
pub fn cont_fn2<T: Target>(c: &Cont) -> Result<impl Fn(i64, i64) -> Tree<T, i64> + use<T>, ShapeError> {
    check::<T>(&c.body)?;
    let c = c.clone();
    Ok(move |x, y| build(&c.body, &[x, y]))
}

fn check<T: Target>(ast: &Ast) -> Result<(), ShapeError> {
    let used = ast.families();
    if used.subset_of(T::PROVIDES) {
        Ok(())
    } else {
        Err(ShapeError { used, available: T::PROVIDES })
    }
}

fn build<T: Target>(ast: &Ast, env: &[i64]) -> Tree<T, i64> {
    match ast {
        Ast::Ret(e) => Tree::Leaf(e.eval(env)),
        Ast::Fail => T::fail(),
        Ast::Or(p, q) => T::or(build(p, env), build(q, env)),
        Ast::GetBind(_, p) => T::get(binder(p, env)),
        Ast::MGetBind(_, p) => T::mget(binder(p, env)),
        Ast::Put(e, p) => T::put(e.eval(env), build(p, env)),
        Ast::Update(e, p) => T::update(e.eval(env), build(p, env)),
        Ast::Seq(p, _, q) => {
            let k = binder(q, env);
            build::<T>(p, env).bind(move |x| k(x))
        }
    }
}

fn binder<T: Target>(p: &Arc<Ast>, env: &[i64]) -> K<T> {
    let (p, env) = (Arc::clone(p), env.to_vec());
    Rc::new(move |x| {
        let mut inner = env.clone();
        inner.push(x);
        build(&p, &inner)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::difftest::ast::Expr;
    use crate::effect::structural_eq;
    use crate::semantics::{h_nil, h_state1};

    #[test]
    fn ret_lowers_to_a_leaf() {
        let t: Tree<NondetF, i64> = lower(&Ast::Ret(Expr::Const(3))).unwrap();
        assert!(structural_eq(&t, &Tree::Leaf(3)));
    }

    #[test]
    fn bound_variable_is_substituted() {
        let p = Ast::GetBind(0, Arc::new(Ast::Ret(Expr::Add(Box::new(Expr::Var(0)), Box::new(Expr::Const(1))))));
        let t: Tree<Sum<StateF<i64>, NilF>, i64> = lower(&p).unwrap();
        assert_eq!(h_nil(&h_state1(&t, 4)), (5, 4));
    }

    #[test]
    fn missing_family_is_a_shape_error() {
        let p = Ast::Put(Expr::Const(1), Arc::new(Ast::Fail));
        let err = lower::<NondetF>(&p).err().unwrap();
        assert_eq!(err.available, Families::NONDET);
        assert!(err.to_string().contains("state"));
    }
}
