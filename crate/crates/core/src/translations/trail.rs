//! Trail stacks: updates are logged so that backtracking can revert them.

use crate::effect::{
    ModifyF, ModifyNondet, ModifyOp, NondetF, NondetOp, Signature, StateF, Sum, SumOp, Tree,
    Undo, Value, fail, get, or, put, rotate, restore, ret, swap, update,
};
use crate::semantics::{h_modify1, h_state1};

use super::{ChoiceStackF, nondet2state, states2state};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrailEntry<R> {
    Delta(R),
    Marker,
}

/// A stack of deltas and choicepoint markers. The top is the last element
/// of the underlying vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrailStack<R> {
    entries: Vec<TrailEntry<R>>,
}

impl<R> Default for TrailStack<R> {
    fn default() -> Self {
        TrailStack { entries: Vec::new() }
    }
}

impl<R: Clone> TrailStack<R> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a stack from entries listed top first.
    pub fn from_top_first(top_first: Vec<TrailEntry<R>>) -> Self {
        let mut entries = top_first;
        entries.reverse();
        TrailStack { entries }
    }

    pub fn top_first(&self) -> Vec<TrailEntry<R>> {
        self.entries.iter().rev().cloned().collect()
    }

    pub fn push(&mut self, e: TrailEntry<R>) {
        self.entries.push(e);
    }

    pub fn pop(&mut self) -> Option<TrailEntry<R>> {
        self.entries.pop()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn markers(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e, TrailEntry::Marker)).count()
    }

    /// Pushes `top_first` onto the stack so that its first entry ends on top.
    pub fn extended(&self, top_first: &[TrailEntry<R>]) -> Self {
        let mut out = self.clone();
        out.entries.extend(top_first.iter().rev().cloned());
        out
    }
}

/// Modify and nondeterminism, followed by the trail stack and the residue.
pub type Trailed<S, R, F> = Sum<ModifyF<S, R>, Sum<NondetF, Sum<StateF<TrailStack<R>>, F>>>;

pub fn push_stack<S: Value, R: Value, F: Signature>(e: TrailEntry<R>) -> Tree<Trailed<S, R, F>, ()> {
    get().bind(move |mut st: TrailStack<R>| {
        st.push(e.clone());
        put(st)
    })
}

pub fn pop_stack<S: Value, R: Value, F: Signature>() -> Tree<Trailed<S, R, F>, Option<TrailEntry<R>>> {
    get().bind(|mut st: TrailStack<R>| {
        let top = st.pop();
        put(st).then(ret(top))
    })
}

/// Pops entries down to and including the nearest marker, reverting every
/// delta on the way. An empty stack ends the walk.
pub fn untrail<S: Value + Undo<R>, R: Value, F: Signature>() -> Tree<Trailed<S, R, F>, ()> {
    pop_stack().bind(|top| match top {
        None | Some(TrailEntry::Marker) => ret(()),
        Some(TrailEntry::Delta(r)) => restore::<S, R, _, _>(r).then(untrail()),
    })
}

/// Logs every update on the trail; left branches push a marker and right
/// branches untrail to it first. Inputs must not contain restore operations.
pub fn local2trail<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
) -> Tree<Trailed<S, R, F>, A> {
    t.fold(Tree::Leaf, |op| match op {
        SumOp::Inl(ModifyOp::Update(r, k)) => push_stack(TrailEntry::Delta(r.clone()))
            .then(update::<S, R, _, _>(r))
            .then(k),
        SumOp::Inl(op) => Tree::node(SumOp::Inl(op)),
        SumOp::Inr(SumOp::Inl(NondetOp::Fail)) => fail(),
        SumOp::Inr(SumOp::Inl(NondetOp::Or(p, q))) => or(
            push_stack(TrailEntry::Marker).then(p),
            untrail().then(q),
        ),
        SumOp::Inr(SumOp::Inr(op)) => Tree::node(SumOp::Inr(SumOp::Inr(SumOp::Inr(op)))),
    })
}

type MachineState<S, R, F, A> = (
    ChoiceStackF<Sum<ModifyF<S, R>, Sum<StateF<TrailStack<R>>, F>>, A>,
    TrailStack<R>,
);

/// Runs the merged machine from an empty choicepoint stack and empty trail.
pub fn extract_t<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<Sum<StateF<MachineState<S, R, F, A>>, F>, ()>,
) -> Tree<F, Vec<A>> {
    h_state1(t, (ChoiceStackF::new(), TrailStack::new())).map(|(_, (st, _))| st.results)
}

/// Local modify semantics simulated with a single state holding the
/// choicepoint stack and the trail, plus the program state.
pub fn simulate_t<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    let machine = nondet2state(&swap(&local2trail(t)));
    let merged = swap(&states2state(&rotate(&swap(&machine))));
    extract_t(&h_modify1(&merged, s).map(|(u, _)| u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::{NilF, mget};
    use crate::semantics::{h_local_m, h_nd_fwd, h_nil};

    type Sig = ModifyNondet<i64, i64, NilF>;
    type Tr = Trailed<i64, i64, NilF>;

    fn run_untrail(s: i64, trail: TrailStack<i64>) -> ((Vec<()>, i64), TrailStack<i64>) {
        let t: Tree<Tr, ()> = untrail();
        h_nil(&h_state1(&h_modify1(&h_nd_fwd(&swap(&t)), s), trail))
    }

    #[test]
    fn untrail_on_empty_trail_returns() {
        assert_eq!(run_untrail(7, TrailStack::new()), ((vec![()], 7), TrailStack::new()));
    }

    #[test]
    fn untrail_restores_deltas_down_to_the_marker() {
        use TrailEntry::*;
        let rest = vec![Delta(100), Marker];
        let mut entries = vec![Delta(3), Delta(5), Marker];
        entries.extend(rest.clone());
        let out = run_untrail(20, TrailStack::from_top_first(entries));
        assert_eq!(out, ((vec![()], 12), TrailStack::from_top_first(rest)));
    }

    #[test]
    fn simulate_t_examples() {
        assert_eq!(h_nil(&simulate_t::<i64, i64, NilF, i64>(&fail(), 3)), Vec::<i64>::new());
        let t: Tree<Sig, i64> = or(update(1).then(mget()), mget());
        assert_eq!(h_nil(&simulate_t(&t, 0)), h_nil(&h_local_m(&t, 0)));
    }

    #[test]
    fn trail_stack_helpers() {
        let s: TrailStack<i64> = TrailStack::from_top_first(vec![TrailEntry::Delta(1), TrailEntry::Marker]);
        assert_eq!(s.markers(), 1);
        let e = s.extended(&[TrailEntry::Delta(9)]);
        assert_eq!(e.top_first(), vec![TrailEntry::Delta(9), TrailEntry::Delta(1), TrailEntry::Marker]);
    }
}
