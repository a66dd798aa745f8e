use crate::effect::{Signature, StateF, StateNondet, Sum, Tree, Value, swap};
use crate::semantics::h_state1;

use super::{ChoiceStackF, local2global, nondet2state, states2state};

type Stack<S, F, A> = ChoiceStackF<Sum<StateF<S>, F>, A>;

/// Runs a merged machine from an empty choicepoint stack and state `s`.
pub fn extract<S: Value, F: Signature, A: Value>(
    t: &Tree<Sum<StateF<(Stack<S, F, A>, S)>, F>, ()>,
    s: S,
) -> Tree<F, Vec<A>> {
    h_state1(t, (ChoiceStackF::new(), s)).map(|(_, (st, _))| st.results)
}

/// Local state and nondeterminism, simulated with one state holding the
/// choicepoint stack and the program state.
pub fn simulate<S: Value, F: Signature, A: Value>(
    t: &Tree<StateNondet<S, F>, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    extract(&states2state(&nondet2state(&swap(&local2global(t)))), s)
}
