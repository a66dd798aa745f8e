//! Observing trees without handling them.
//!
//! State-indexed continuations are opaque closures, so they are observed by
//! applying them to the sample states of [`Probe`]. Two trees are
//! structurally equal when they agree on every leaf, every operation payload,
//! and every probed continuation.

use std::fmt::{Debug, Write};

use super::{
    ModifyF, ModifyOp, NilF, NondetF, NondetOp, Signature, StateF, StateOp, Sum, SumOp, Tree,
    Value,
};

/// A fixed, finite set of sample values.
pub trait Probe: Sized {
    fn probes() -> Vec<Self>;
}

impl Probe for i64 {
    fn probes() -> Vec<i64> {
        vec![0, 1, -2, 5]
    }
}

impl Probe for () {
    fn probes() -> Vec<()> {
        vec![()]
    }
}

impl<A: Probe + Clone, B: Probe> Probe for (A, B) {
    fn probes() -> Vec<(A, B)> {
        A::probes()
            .into_iter()
            .flat_map(|a| B::probes().into_iter().map(move |b| (a.clone(), b)))
            .collect()
    }
}

/// One operation seen from outside.
pub struct View<X> {
    /// Injection index of the operation's family within the signature.
    pub index: usize,
    pub label: String,
    /// Probed continuations count as children.
    pub children: Vec<X>,
    pub opaque: bool,
}

pub trait Inspect: Signature {
    const FAMILIES: usize;
    fn view<X: Clone + 'static>(op: &Self::Op<X>) -> View<X>;
}

impl<S: Value + Probe + Debug> Inspect for StateF<S> {
    const FAMILIES: usize = 1;
    fn view<X: Clone + 'static>(op: &StateOp<S, X>) -> View<X> {
        match op {
            StateOp::Get(k) => View {
                index: 0,
                label: "get".into(),
                children: S::probes().into_iter().map(|s| k(s)).collect(),
                opaque: true,
            },
            StateOp::Put(s, x) => View {
                index: 0,
                label: format!("put({s:?})"),
                children: vec![x.clone()],
                opaque: false,
            },
        }
    }
}

impl Inspect for NondetF {
    const FAMILIES: usize = 1;
    fn view<X: Clone + 'static>(op: &NondetOp<X>) -> View<X> {
        let (label, children) = match op {
            NondetOp::Fail => ("fail", vec![]),
            NondetOp::Or(l, r) => ("or", vec![l.clone(), r.clone()]),
        };
        View { index: 0, label: label.into(), children, opaque: false }
    }
}

impl<S: Value + Probe + Debug, R: Value + Debug> Inspect for ModifyF<S, R> {
    const FAMILIES: usize = 1;
    fn view<X: Clone + 'static>(op: &ModifyOp<S, R, X>) -> View<X> {
        match op {
            ModifyOp::MGet(k) => View {
                index: 0,
                label: "mget".into(),
                children: S::probes().into_iter().map(|s| k(s)).collect(),
                opaque: true,
            },
            ModifyOp::Update(r, x) => View {
                index: 0,
                label: format!("update({r:?})"),
                children: vec![x.clone()],
                opaque: false,
            },
            ModifyOp::Restore(r, x) => View {
                index: 0,
                label: format!("restore({r:?})"),
                children: vec![x.clone()],
                opaque: false,
            },
        }
    }
}

impl Inspect for NilF {
    const FAMILIES: usize = 1;
    fn view<X: Clone + 'static>(op: &Self::Op<X>) -> View<X> {
        op.absurd()
    }
}

impl<F: Inspect, G: Inspect> Inspect for Sum<F, G> {
    const FAMILIES: usize = F::FAMILIES + G::FAMILIES;
    fn view<X: Clone + 'static>(op: &Self::Op<X>) -> View<X> {
        match op {
            SumOp::Inl(a) => F::view(a),
            SumOp::Inr(b) => {
                let mut v = G::view(b);
                v.index += F::FAMILIES;
                v
            }
        }
    }
}

/// Leaf values in left-to-right order, probing continuations.
pub fn leaves<F: Inspect, A: Value>(t: &Tree<F, A>) -> Vec<A> {
    let mut out = Vec::new();
    collect(t, &mut out);
    out
}

fn collect<F: Inspect, A: Value>(t: &Tree<F, A>, out: &mut Vec<A>) {
    match t {
        Tree::Leaf(a) => out.push(a.clone()),
        Tree::Node(op) => F::view(&**op).children.iter().for_each(|c| collect(c, out)),
    }
}

/// Length of the longest root-to-leaf path, counting operation nodes.
pub fn depth<F: Inspect, A: Value>(t: &Tree<F, A>) -> usize {
    match t {
        Tree::Leaf(_) => 0,
        Tree::Node(op) => 1 + F::view(&**op).children.iter().map(depth).max().unwrap_or(0),
    }
}

pub fn node_count<F: Inspect, A: Value>(t: &Tree<F, A>) -> usize {
    match t {
        Tree::Leaf(_) => 1,
        Tree::Node(op) => 1 + F::view(&**op).children.iter().map(node_count).sum::<usize>(),
    }
}

pub fn structural_eq<F: Inspect, A: Value + PartialEq>(a: &Tree<F, A>, b: &Tree<F, A>) -> bool {
    match (a, b) {
        (Tree::Leaf(x), Tree::Leaf(y)) => x == y,
        (Tree::Node(p), Tree::Node(q)) => {
            let (p, q) = (F::view(&**p), F::view(&**q));
            p.index == q.index
                && p.label == q.label
                && p.children.len() == q.children.len()
                && p.children.iter().zip(&q.children).all(|(x, y)| structural_eq(x, y))
        }
        _ => false,
    }
}

/// Renders a tree as text.
///
/// Leaves print as `ret v`; operations print their label followed by their
/// children in parentheses, e.g. `or(ret 1, put(3)(fail))`. Continuations
/// indexed by a state print as `get(λ)` or `mget(λ)` and are not expanded.
/// Operations of a family other than the first carry an `@index` suffix.
pub fn pretty<F: Inspect, A: Value + Debug>(t: &Tree<F, A>) -> String {
    let mut s = String::new();
    render(t, &mut s);
    s
}

fn render<F: Inspect, A: Value + Debug>(t: &Tree<F, A>, out: &mut String) {
    match t {
        Tree::Leaf(a) => {
            let _ = write!(out, "ret {a:?}");
        }
        Tree::Node(op) => {
            let v = F::view(&**op);
            out.push_str(&v.label);
            if v.index > 0 {
                let _ = write!(out, "@{}", v.index);
            }
            if v.opaque {
                out.push_str("(λ)");
            } else if !v.children.is_empty() {
                out.push('(');
                for (i, c) in v.children.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    render(c, out);
                }
                out.push(')');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::{fail, get, or, put, ret};

    type Sig = Sum<StateF<i64>, Sum<NondetF, NilF>>;

    #[test]
    fn pretty_marks_family_index_and_opaque_continuations() {
        let t: Tree<Sig, i64> = put(3).then(or(ret(1), get().then(fail())));
        assert_eq!(pretty(&t), "put(3)(or@1(ret 1, get(λ)))");
    }

    #[test]
    fn probed_leaves_follow_probe_order() {
        let t: Tree<Sig, i64> = get().bind(|s: i64| ret(s * 2));
        assert_eq!(leaves(&t), vec![0, 2, -4, 10]);
        assert_eq!(depth(&t), 1);
        assert_eq!(node_count(&t), 5);
    }

    #[test]
    fn pair_probes_are_a_product() {
        assert_eq!(<(i64, i64)>::probes().len(), 16);
    }
}
