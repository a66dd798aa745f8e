//! Fused machines: each collapses a whole translation pipeline into a single
//! fold whose carrier is a resumable machine step.

use std::cell::RefCell;
use std::rc::Rc;

use serde::Serialize;

use crate::effect::{
    ModifyNondet, ModifyOp, NondetOp, Signature, StateNondet, StateOp, SumOp, Tree, Undo, Value,
};
use crate::translations::{TrailEntry, TrailStack};

type Resume<M, S, F, A> = Rc<dyn Fn(M, S) -> Tree<F, Vec<A>>>;

/// Results found so far and pending resumptions (top last).
pub struct CpMachine<S: 'static, F: Signature, A: Value> {
    pub results: Vec<A>,
    pub cp_stack: Vec<Resume<CpMachine<S, F, A>, S, F, A>>,
}

impl<S, F: Signature, A: Value> Clone for CpMachine<S, F, A> {
    fn clone(&self) -> Self {
        CpMachine { results: self.results.clone(), cp_stack: self.cp_stack.clone() }
    }
}

type CpStep<S, F, A> = Resume<CpMachine<S, F, A>, S, F, A>;

fn cp_continue<S: Value, F: Signature, A: Value>(mut m: CpMachine<S, F, A>, s: S) -> Tree<F, Vec<A>> {
    match m.cp_stack.pop() {
        None => Tree::Leaf(m.results),
        Some(p) => p(m, s),
    }
}

/// Local state and nondeterminism in one pass: a put pushes a resumption that
/// reinstates the overwritten state when backtracked into.
pub fn simulate_f<S: Value, F: Signature, A: Value>(
    t: &Tree<StateNondet<S, F>, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    let step: CpStep<S, F, A> = t.fold(
        |x| -> CpStep<S, F, A> {
            Rc::new(move |mut m: CpMachine<S, F, A>, s| {
                m.results.push(x.clone());
                cp_continue(m, s)
            })
        },
        |op| -> CpStep<S, F, A> {
            match op {
                SumOp::Inl(StateOp::Get(k)) => Rc::new(move |m, s: S| k(s.clone())(m, s)),
                SumOp::Inl(StateOp::Put(t, k)) => Rc::new(move |mut m: CpMachine<S, F, A>, s: S| {
                    m.cp_stack.push(Rc::new(move |m, _| cp_continue(m, s.clone())));
                    k(m, t.clone())
                }),
                SumOp::Inr(SumOp::Inl(NondetOp::Fail)) => Rc::new(cp_continue),
                SumOp::Inr(SumOp::Inl(NondetOp::Or(p, q))) => {
                    Rc::new(move |mut m: CpMachine<S, F, A>, s| {
                        m.cp_stack.push(Rc::clone(&q));
                        p(m, s)
                    })
                }
                SumOp::Inr(SumOp::Inr(op)) => {
                    let op = Rc::new(op);
                    Rc::new(move |m: CpMachine<S, F, A>, s: S| {
                        let resume: Rc<dyn Fn(&CpStep<S, F, A>) -> Tree<F, Vec<A>>> =
                            Rc::new(move |k| k(m.clone(), s.clone()));
                        Tree::node(F::map_op(&op, &resume))
                    })
                }
            }
        },
    );
    step(CpMachine { results: Vec::new(), cp_stack: Vec::new() }, s)
}

/// Results, pending resumptions and the trail (tops last).
pub struct WamMachine<S: 'static, R: Value, F: Signature, A: Value> {
    pub results: Vec<A>,
    pub cp_stack: Vec<Resume<WamMachine<S, R, F, A>, S, F, A>>,
    pub trail: TrailStack<R>,
}

impl<S, R: Value, F: Signature, A: Value> Clone for WamMachine<S, R, F, A> {
    fn clone(&self) -> Self {
        WamMachine {
            results: self.results.clone(),
            cp_stack: self.cp_stack.clone(),
            trail: self.trail.clone(),
        }
    }
}

type WamStep<S, R, F, A> = Resume<WamMachine<S, R, F, A>, S, F, A>;

/// Kind of machine transition, as recorded in traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Ret,
    Get,
    Update,
    Restore,
    Fail,
    Or,
    Untrail,
    Resume,
    Forward,
}

/// One machine transition, observed before it runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub op: StepKind,
    pub results: usize,
    pub cp_stack: usize,
    pub trail: usize,
    pub markers: usize,
}

/// Collected step records of a traced run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Trace {
    pub steps: Vec<Step>,
}

type Tracer = Option<Rc<RefCell<Trace>>>;

fn record<S, R: Value, F: Signature, A: Value>(tr: &Tracer, op: StepKind, m: &WamMachine<S, R, F, A>) {
    if let Some(tr) = tr {
        tr.borrow_mut().steps.push(Step {
            op,
            results: m.results.len(),
            cp_stack: m.cp_stack.len(),
            trail: m.trail.len(),
            markers: m.trail.markers(),
        });
    }
}

fn wam_continue<S: Value, R: Value, F: Signature, A: Value>(
    tr: &Tracer,
    mut m: WamMachine<S, R, F, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    if m.cp_stack.is_empty() {
        return Tree::Leaf(m.results);
    }
    record(tr, StepKind::Resume, &m);
    let p = m.cp_stack.pop().expect("checked non-empty");
    p(m, s)
}

/// Reverts deltas down to the nearest marker, then runs `q`.
fn untrail_then<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    tr: Tracer,
    q: WamStep<S, R, F, A>,
) -> WamStep<S, R, F, A> {
    Rc::new(move |mut m: WamMachine<S, R, F, A>, mut s: S| {
        loop {
            record(&tr, StepKind::Untrail, &m);
            match m.trail.pop() {
                None | Some(TrailEntry::Marker) => return q(m, s),
                Some(TrailEntry::Delta(r)) => s = s.revert(&r),
            }
        }
    })
}

fn simulate_tf_with<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
    s: S,
    tr: Tracer,
) -> Tree<F, Vec<A>> {
    let leaf_tr = tr.clone();
    let step: WamStep<S, R, F, A> = t.fold(
        move |x| -> WamStep<S, R, F, A> {
            let tr = leaf_tr.clone();
            Rc::new(move |mut m: WamMachine<S, R, F, A>, s| {
                record(&tr, StepKind::Ret, &m);
                m.results.push(x.clone());
                wam_continue(&tr, m, s)
            })
        },
        move |op| -> WamStep<S, R, F, A> {
            let tr = tr.clone();
            match op {
                SumOp::Inl(ModifyOp::MGet(k)) => Rc::new(move |m, s: S| {
                    record(&tr, StepKind::Get, &m);
                    k(s.clone())(m, s)
                }),
                SumOp::Inl(ModifyOp::Update(r, k)) => Rc::new(move |mut m: WamMachine<S, R, F, A>, s: S| {
                    record(&tr, StepKind::Update, &m);
                    m.trail.push(TrailEntry::Delta(r.clone()));
                    k(m, s.apply(&r))
                }),
                SumOp::Inl(ModifyOp::Restore(r, k)) => Rc::new(move |m, s: S| {
                    record(&tr, StepKind::Restore, &m);
                    k(m, s.revert(&r))
                }),
                SumOp::Inr(SumOp::Inl(NondetOp::Fail)) => Rc::new(move |m, s| {
                    record(&tr, StepKind::Fail, &m);
                    wam_continue(&tr, m, s)
                }),
                SumOp::Inr(SumOp::Inl(NondetOp::Or(p, q))) => {
                    let resume = untrail_then(tr.clone(), q);
                    Rc::new(move |mut m: WamMachine<S, R, F, A>, s| {
                        record(&tr, StepKind::Or, &m);
                        m.cp_stack.push(Rc::clone(&resume));
                        m.trail.push(TrailEntry::Marker);
                        p(m, s)
                    })
                }
                SumOp::Inr(SumOp::Inr(op)) => {
                    let op = Rc::new(op);
                    Rc::new(move |m: WamMachine<S, R, F, A>, s: S| {
                        record(&tr, StepKind::Forward, &m);
                        let resume: Rc<dyn Fn(&WamStep<S, R, F, A>) -> Tree<F, Vec<A>>> =
                            Rc::new(move |k| k(m.clone(), s.clone()));
                        Tree::node(F::map_op(&op, &resume))
                    })
                }
            }
        },
    );
    let start = WamMachine { results: Vec::new(), cp_stack: Vec::new(), trail: TrailStack::new() };
    step(start, s)
}

/// Local modify semantics in one pass with a choicepoint stack and a trail.
pub fn simulate_tf<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
    s: S,
) -> Tree<F, Vec<A>> {
    simulate_tf_with(t, s, None)
}

/// As [`simulate_tf`], also returning one record per machine transition.
/// Records of transitions under forwarded operations appear only once the
/// returned tree has been handled further.
pub fn simulate_tf_traced<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
    s: S,
) -> (Tree<F, Vec<A>>, Rc<RefCell<Trace>>) {
    let trace = Rc::new(RefCell::new(Trace::default()));
    let out = simulate_tf_with(t, s, Some(Rc::clone(&trace)));
    (out, trace)
}

/// Checks the trail discipline on a trace: outside an untrail walk, the
/// number of markers equals the number of pending resumptions. Returns the
/// index of the first offending step.
pub fn trail_discipline_violation(trace: &Trace) -> Option<usize> {
    let mut in_untrail = false;
    for (i, st) in trace.steps.iter().enumerate() {
        match st.op {
            StepKind::Untrail => in_untrail = true,
            _ => {
                if !in_untrail && st.markers != st.cp_stack {
                    return Some(i);
                }
                in_untrail = false;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::{NilF, fail, get, mget, or, put, ret, update};
    use crate::semantics::{h_local, h_local_m, h_nil};

    #[test]
    fn cp_machine_examples() {
        let t: Tree<StateNondet<i64, NilF>, i64> = ret(3);
        assert_eq!(h_nil(&simulate_f(&t, 0)), vec![3]);
        let t: Tree<StateNondet<i64, NilF>, i64> = put(42).then(or(put(21).then(get()), get()));
        assert_eq!(h_nil(&simulate_f(&t, 0)), h_nil(&h_local(&t, 0)));
    }

    #[test]
    fn wam_machine_examples() {
        assert_eq!(h_nil(&simulate_tf::<i64, i64, NilF, i64>(&fail(), 0)), Vec::<i64>::new());
        let t: Tree<ModifyNondet<i64, i64, NilF>, i64> =
            update(2).then(or(update(1).then(mget()), or(fail(), mget())));
        assert_eq!(h_nil(&simulate_tf(&t, 0)), h_nil(&h_local_m(&t, 0)));
    }

    #[test]
    fn traced_run_keeps_markers_in_step_with_resumptions() {
        let t: Tree<ModifyNondet<i64, i64, NilF>, i64> =
            or(update(1).then(or(update(2).then(mget()), mget())), mget());
        let (out, trace) = simulate_tf_traced(&t, 0);
        assert_eq!(h_nil(&out), vec![3, 1, 0]);
        let trace = trace.borrow();
        assert!(trace.steps.iter().any(|s| s.op == StepKind::Untrail));
        assert_eq!(trail_discipline_violation(&trace), None);
    }
}
