//! First-order syntax for random programs over integer states.

use std::fmt;
use std::sync::Arc;

/// Integer expressions. Variables are de Bruijn levels: `Var(i)` is the
/// `i`-th enclosing binder counted from the outside.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(i64),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, env: &[i64]) -> i64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => env[*i],
            Expr::Add(a, b) => a.eval(env).wrapping_add(b.eval(env)),
            Expr::Sub(a, b) => a.eval(env).wrapping_sub(b.eval(env)),
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Const(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.max_var().max(b.max_var()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
        }
    }
}

/// Programs returning integers. Binders (`GetBind`, `MGetBind`, `Seq`) bind
/// the next variable level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ast {
    Ret(Expr),
    Fail,
    Or(Arc<Ast>, Arc<Ast>),
    GetBind(usize, Arc<Ast>),
    Put(Expr, Arc<Ast>),
    MGetBind(usize, Arc<Ast>),
    Update(Expr, Arc<Ast>),
    /// Runs the first program and binds its result in the second.
    Seq(Arc<Ast>, usize, Arc<Ast>),
}

/// A continuation taking `arity` arguments, bound at levels
/// `base..base + arity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cont {
    pub base: usize,
    pub arity: usize,
    pub body: Ast,
}

/// Which operation families a program may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Families {
    pub state: bool,
    pub nondet: bool,
    pub modify: bool,
}

impl Families {
    pub const NONDET: Families = Families { state: false, nondet: true, modify: false };
    pub const STATE: Families = Families { state: true, nondet: false, modify: false };
    pub const MODIFY: Families = Families { state: false, nondet: false, modify: true };
    pub const STATE_NONDET: Families = Families { state: true, nondet: true, modify: false };
    pub const MODIFY_NONDET: Families = Families { state: false, nondet: true, modify: true };
    pub const ALL: Families = Families { state: true, nondet: true, modify: true };

    pub fn union(self, o: Families) -> Families {
        Families { state: self.state || o.state, nondet: self.nondet || o.nondet, modify: self.modify || o.modify }
    }

    pub fn subset_of(self, o: Families) -> bool {
        (!self.state || o.state) && (!self.nondet || o.nondet) && (!self.modify || o.modify)
    }
}

impl fmt::Display for Families {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(self.state, "state"), (self.nondet, "nondet"), (self.modify, "modify")]
            .into_iter()
            .filter_map(|(on, n)| on.then_some(n))
            .collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// Construct names, used by the generator audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construct {
    Ret,
    Fail,
    Or,
    GetBind,
    Put,
    MGetBind,
    Update,
    Seq,
}

impl Ast {
    pub fn families(&self) -> Families {
        let here = match self {
            Ast::Ret(_) | Ast::Seq(..) => Families::default(),
            Ast::Fail | Ast::Or(..) => Families::NONDET,
            Ast::GetBind(..) | Ast::Put(..) => Families::STATE,
            Ast::MGetBind(..) | Ast::Update(..) => Families::MODIFY,
        };
        self.children().iter().fold(here, |acc, c| acc.union(c.families()))
    }

    pub fn children(&self) -> Vec<&Ast> {
        match self {
            Ast::Ret(_) | Ast::Fail => vec![],
            Ast::Or(p, q) | Ast::Seq(p, _, q) => vec![p, q],
            Ast::GetBind(_, p) | Ast::Put(_, p) | Ast::MGetBind(_, p) | Ast::Update(_, p) => vec![p],
        }
    }

    pub fn construct(&self) -> Construct {
        match self {
            Ast::Ret(_) => Construct::Ret,
            Ast::Fail => Construct::Fail,
            Ast::Or(..) => Construct::Or,
            Ast::GetBind(..) => Construct::GetBind,
            Ast::Put(..) => Construct::Put,
            Ast::MGetBind(..) => Construct::MGetBind,
            Ast::Update(..) => Construct::Update,
            Ast::Seq(..) => Construct::Seq,
        }
    }

    pub fn constructs(&self) -> Vec<Construct> {
        let mut out = vec![self.construct()];
        for c in self.children() {
            out.extend(c.constructs());
        }
        out
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// Upper bound on the number of answers of any run.
    pub fn answer_bound(&self) -> usize {
        match self {
            Ast::Ret(_) => 1,
            Ast::Fail => 0,
            Ast::Or(p, q) => p.answer_bound() + q.answer_bound(),
            Ast::Seq(p, _, q) => p.answer_bound() * q.answer_bound(),
            Ast::GetBind(_, p) | Ast::Put(_, p) | Ast::MGetBind(_, p) | Ast::Update(_, p) => p.answer_bound(),
        }
    }

    /// True if every variable is bound by an enclosing binder, given `scope`
    /// variables already in scope.
    pub fn well_scoped(&self, scope: usize) -> bool {
        let ok = |e: &Expr| e.max_var().is_none_or(|v| v < scope);
        match self {
            Ast::Ret(e) => ok(e),
            Ast::Fail => true,
            Ast::Or(p, q) => p.well_scoped(scope) && q.well_scoped(scope),
            Ast::GetBind(v, p) | Ast::MGetBind(v, p) => *v == scope && p.well_scoped(scope + 1),
            Ast::Put(e, p) | Ast::Update(e, p) => ok(e) && p.well_scoped(scope),
            Ast::Seq(p, v, q) => p.well_scoped(scope) && *v == scope && q.well_scoped(scope + 1),
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Ret(e) => write!(f, "ret {e}"),
            Ast::Fail => write!(f, "fail"),
            Ast::Or(p, q) => write!(f, "({p} | {q})"),
            Ast::GetBind(v, p) => write!(f, "get x{v}. {p}"),
            Ast::Put(e, p) => write!(f, "put {e}; {p}"),
            Ast::MGetBind(v, p) => write!(f, "mget x{v}. {p}"),
            Ast::Update(e, p) => write!(f, "update {e}; {p}"),
            Ast::Seq(p, v, q) => write!(f, "(x{v} <- {p}; {q})"),
        }
    }
}

impl fmt::Display for Cont {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = (self.base..self.base + self.arity).map(|i| format!("x{i}")).collect();
        write!(f, "\\{}. {}", params.join(" "), self.body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        let p = Ast::GetBind(0, Arc::new(Ast::Or(
            Arc::new(Ast::Put(Expr::Add(Box::new(Expr::Var(0)), Box::new(Expr::Const(1))), Arc::new(Ast::Ret(Expr::Var(0))))),
            Arc::new(Ast::Fail),
        )));
        assert_eq!(p.to_string(), "get x0. (put (x0 + 1); ret x0 | fail)");
        assert!(p.well_scoped(0));
        assert_eq!(p.families(), Families::STATE_NONDET);
        assert_eq!(p.node_count(), 5);
    }

    #[test]
    fn evaluation_wraps() {
        let e = Expr::Add(Box::new(Expr::Const(i64::MAX)), Box::new(Expr::Const(1)));
        assert_eq!(e.eval(&[]), i64::MIN);
    }
}
