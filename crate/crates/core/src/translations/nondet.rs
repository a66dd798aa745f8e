//! Nondeterminism simulated by a state holding the results found so far and
//! a stack of pending branches.

use crate::effect::{
    NondetF, NondetOp, Signature, StateF, Sum, SumOp, Tree, Value, get, put, ret,
};
use crate::semantics::{h_state1, h_state_closed};

/// Machine state for pure nondeterminism. The top of `stack` is its last
/// element.
pub struct ChoiceStack<A: Value> {
    pub results: Vec<A>,
    pub stack: Vec<Tree<StateF<ChoiceStack<A>>, ()>>,
}

impl<A: Value> Clone for ChoiceStack<A> {
    fn clone(&self) -> Self {
        ChoiceStack { results: self.results.clone(), stack: self.stack.clone() }
    }
}

impl<A: Value> ChoiceStack<A> {
    pub fn new() -> Self {
        ChoiceStack { results: Vec::new(), stack: Vec::new() }
    }
}

impl<A: Value> Default for ChoiceStack<A> {
    fn default() -> Self {
        Self::new()
    }
}

type Machine<A> = Tree<StateF<ChoiceStack<A>>, ()>;

/// Resumes the most recent pending branch, or stops.
pub fn pop_s<A: Value>() -> Machine<A> {
    get().bind(|mut st: ChoiceStack<A>| match st.stack.pop() {
        None => ret(()),
        Some(p) => put(st).then(p),
    })
}

pub fn push_s<A: Value>(q: Machine<A>, p: Machine<A>) -> Machine<A> {
    get().bind(move |mut st: ChoiceStack<A>| {
        st.stack.push(q.clone());
        put(st).then(p.clone())
    })
}

pub fn append_s<A: Value>(x: A, p: Machine<A>) -> Machine<A> {
    get().bind(move |mut st: ChoiceStack<A>| {
        st.results.push(x.clone());
        put(st).then(p.clone())
    })
}

pub fn nondet2state_s<A: Value>(t: &Tree<NondetF, A>) -> Machine<A> {
    t.fold(
        |x| append_s(x, pop_s()),
        |op| match op {
            NondetOp::Fail => pop_s(),
            NondetOp::Or(p, q) => push_s(q, p),
        },
    )
}

pub fn extract_s<A: Value>(t: &Machine<A>) -> Vec<A> {
    h_state_closed(t).run(ChoiceStack::new()).1.results
}

pub fn run_nd<A: Value>(t: &Tree<NondetF, A>) -> Vec<A> {
    extract_s(&nondet2state_s(t))
}

/// Machine state for nondeterminism over a residual signature `G`.
pub struct ChoiceStackF<G: Signature, A: Value> {
    pub results: Vec<A>,
    pub stack: Vec<Tree<Sum<StateF<ChoiceStackF<G, A>>, G>, ()>>,
}

impl<G: Signature, A: Value> Clone for ChoiceStackF<G, A> {
    fn clone(&self) -> Self {
        ChoiceStackF { results: self.results.clone(), stack: self.stack.clone() }
    }
}

impl<G: Signature, A: Value> ChoiceStackF<G, A> {
    pub fn new() -> Self {
        ChoiceStackF { results: Vec::new(), stack: Vec::new() }
    }
}

impl<G: Signature, A: Value> Default for ChoiceStackF<G, A> {
    fn default() -> Self {
        Self::new()
    }
}

type MachineF<G, A> = Tree<Sum<StateF<ChoiceStackF<G, A>>, G>, ()>;

pub fn pop_ss<G: Signature, A: Value>() -> MachineF<G, A> {
    get().bind(|mut st: ChoiceStackF<G, A>| match st.stack.pop() {
        None => ret(()),
        Some(p) => put(st).then(p),
    })
}

pub fn push_ss<G: Signature, A: Value>(q: MachineF<G, A>, p: MachineF<G, A>) -> MachineF<G, A> {
    get().bind(move |mut st: ChoiceStackF<G, A>| {
        st.stack.push(q.clone());
        put(st).then(p.clone())
    })
}

pub fn append_ss<G: Signature, A: Value>(x: A, p: MachineF<G, A>) -> MachineF<G, A> {
    get().bind(move |mut st: ChoiceStackF<G, A>| {
        st.results.push(x.clone());
        put(st).then(p.clone())
    })
}

/// Nondeterminism to choicepoint state; residual operations are forwarded.
pub fn nondet2state<G: Signature, A: Value>(t: &Tree<Sum<NondetF, G>, A>) -> MachineF<G, A> {
    t.fold(
        |x| append_ss(x, pop_ss()),
        |op| match op {
            SumOp::Inl(NondetOp::Fail) => pop_ss(),
            SumOp::Inl(NondetOp::Or(p, q)) => push_ss(q, p),
            SumOp::Inr(op) => Tree::node(SumOp::Inr(op)),
        },
    )
}

pub fn extract_ss<G: Signature, A: Value>(t: &MachineF<G, A>) -> Tree<G, Vec<A>> {
    h_state1(t, ChoiceStackF::new()).map(|(_, st)| st.results)
}

pub fn run_nd_fwd<G: Signature, A: Value>(t: &Tree<Sum<NondetF, G>, A>) -> Tree<G, Vec<A>> {
    extract_ss(&nondet2state(t))
}
