//! The n-queens puzzle as a backtracking benchmark for every pipeline.

use std::fmt;
use std::str::FromStr;
use std::thread;

use serde::Serialize;

use crate::effect::{
    Member, ModifyF, ModifyNondet, NilF, NondetF, Probe, StateF, StateNondet, Tree, Undo, choose,
    get, guard, mget, put, ret, update,
};
use crate::machines::{simulate_f, simulate_tf};
use crate::semantics::{h_global, h_global_m, h_global_t, h_local, h_local_m, h_nd, h_nil};
use crate::translations::{local2global, local2global_m, simulate, simulate_t};

pub type Row = i64;

/// Queens placed so far: the current column and the rows used, most recent
/// first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueensState {
    pub column: i64,
    pub placed: Vec<Row>,
}

impl QueensState {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Undo<Row> for QueensState {
    fn apply(&self, r: &Row) -> QueensState {
        let mut placed = Vec::with_capacity(self.placed.len() + 1);
        placed.push(*r);
        placed.extend_from_slice(&self.placed);
        QueensState { column: self.column + 1, placed }
    }

    /// Panics on an empty board: reverting there means a delta was undone
    /// twice.
    fn revert(&self, _: &Row) -> QueensState {
        assert!(self.column > 0 && !self.placed.is_empty(), "revert on an empty queens board");
        QueensState { column: self.column - 1, placed: self.placed[1..].to_vec() }
    }
}

impl Probe for QueensState {
    fn probes() -> Vec<QueensState> {
        vec![
            QueensState::new(),
            QueensState { column: 1, placed: vec![2] },
            QueensState { column: 2, placed: vec![4, 1] },
        ]
    }
}

/// True if a queen on row `q`, `n` columns after the head of `qs`, attacks
/// none of the queens in `qs` (listed most recent first).
pub fn safe(q: Row, n: i64, qs: &[Row]) -> bool {
    match qs.split_first() {
        None => true,
        Some((&q1, rest)) => q != q1 && q != q1 + n && q != q1 - n && safe(q, n + 1, rest),
    }
}

pub fn valid(qs: &[Row]) -> bool {
    match qs.split_first() {
        None => true,
        Some((&q, rest)) => valid(rest) && safe(q, 1, rest),
    }
}

/// All permutations in lexicographic order of positions.
pub fn permutations<T: Clone>(xs: &[T]) -> Vec<Vec<T>> {
    if xs.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn filtr<F: Member<NondetF, I>, I>(p: impl Fn(&[Row]) -> bool, x: Vec<Row>) -> Tree<F, Vec<Row>> {
    if p(&x) { ret(x) } else { crate::effect::fail() }
}

/// Generate and test over all permutations of the rows.
pub fn queens_naive(n: i64) -> Tree<NondetF, Vec<Row>> {
    let rows: Vec<Row> = (1..=n).collect();
    choose(permutations(&rows)).bind(|qs| filtr(valid, qs))
}

fn column_order(placed: &[Row]) -> Vec<Row> {
    placed.iter().rev().copied().collect()
}

/// Places one queen per column, pruning attacked rows as it goes. Solutions
/// list rows in column order.
pub fn queens<F, I1, I2>(n: i64) -> Tree<F, Vec<Row>>
where
    F: Member<StateF<QueensState>, I1> + Member<NondetF, I2>,
    I1: 'static,
    I2: 'static,
{
    get::<QueensState, F, I1>().bind(move |st| {
        if st.column >= n {
            return ret(column_order(&st.placed));
        }
        choose::<F, I2, Row>((1..=n).collect()).bind(move |r| {
            guard::<F, I2>(safe(r, 1, &st.placed))
                .then(get::<QueensState, F, I1>())
                .bind(move |s| put::<QueensState, F, I1>(s.apply(&r)))
                .then(queens::<F, I1, I2>(n))
        })
    })
}

/// As [`queens`], with delta updates instead of puts.
pub fn queens_m<F, I1, I2>(n: i64) -> Tree<F, Vec<Row>>
where
    F: Member<ModifyF<QueensState, Row>, I1> + Member<NondetF, I2>,
    I1: 'static,
    I2: 'static,
{
    mget::<QueensState, Row, F, I1>().bind(move |st| {
        if st.column >= n {
            return ret(column_order(&st.placed));
        }
        choose::<F, I2, Row>((1..=n).collect()).bind(move |r| {
            guard::<F, I2>(safe(r, 1, &st.placed))
                .then(update::<QueensState, Row, F, I1>(r))
                .then(queens_m::<F, I1, I2>(n))
        })
    })
}

pub type QueensSig = StateNondet<QueensState, NilF>;
pub type QueensSigM = ModifyNondet<QueensState, Row, NilF>;

fn program(n: i64) -> Tree<QueensSig, Vec<Row>> {
    queens(n)
}

fn program_m(n: i64) -> Tree<QueensSigM, Vec<Row>> {
    queens_m(n)
}

/// Every way of running the queens program.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Pipeline {
    Naive,
    Local,
    Global,
    Sim,
    FusedF,
    LocalM,
    GlobalM,
    GlobalT,
    SimT,
    FusedTF,
}

impl Pipeline {
    pub const ALL: [Pipeline; 10] = [
        Pipeline::Naive,
        Pipeline::Local,
        Pipeline::Global,
        Pipeline::Sim,
        Pipeline::FusedF,
        Pipeline::LocalM,
        Pipeline::GlobalM,
        Pipeline::GlobalT,
        Pipeline::SimT,
        Pipeline::FusedTF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Naive => "naive",
            Pipeline::Local => "local",
            Pipeline::Global => "global",
            Pipeline::Sim => "sim",
            Pipeline::FusedF => "fusedF",
            Pipeline::LocalM => "localM",
            Pipeline::GlobalM => "globalM",
            Pipeline::GlobalT => "globalT",
            Pipeline::SimT => "simT",
            Pipeline::FusedTF => "fusedTF",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown pipeline `{0}`")]
pub struct UnknownPipeline(pub String);

impl FromStr for Pipeline {
    type Err = UnknownPipeline;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownPipeline(s.to_string()))
    }
}

/// Solutions of the `n`-queens puzzle via `p`, from an empty board. Runs on
/// the calling thread; see [`solve`] for deep boards.
pub fn run_pipeline(p: Pipeline, n: i64) -> Vec<Vec<Row>> {
    let s0 = QueensState::new();
    match p {
        Pipeline::Naive => h_nd(&queens_naive(n)),
        Pipeline::Local => h_nil(&h_local(&program(n), s0)),
        Pipeline::Global => h_nil(&h_global(&local2global(&program(n)), s0)),
        Pipeline::Sim => h_nil(&simulate(&program(n), s0)),
        Pipeline::FusedF => h_nil(&simulate_f(&program(n), s0)),
        Pipeline::LocalM => h_nil(&h_local_m(&program_m(n), s0)),
        Pipeline::GlobalM => h_nil(&h_global_m(&local2global_m(&program_m(n)), s0)),
        Pipeline::GlobalT => h_nil(&h_global_t(&program_m(n), s0)),
        Pipeline::SimT => h_nil(&simulate_t(&program_m(n), s0)),
        Pipeline::FusedTF => h_nil(&simulate_tf(&program_m(n), s0)),
    }
}

/// Stack size for runs whose recursion depth grows with the search.
pub const DEEP_STACK: usize = 1 << 30;

/// Runs `f` on a fresh thread with a large stack.
pub fn on_deep_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    thread::Builder::new()
        .stack_size(DEEP_STACK)
        .spawn(f)
        .expect("spawn worker thread")
        .join()
        .unwrap_or_else(|e| std::panic::resume_unwind(e))
}

/// [`run_pipeline`] on a worker thread with a stack large enough for n = 8
/// and beyond.
pub fn solve(p: Pipeline, n: i64) -> Vec<Vec<Row>> {
    on_deep_stack(move || run_pipeline(p, n))
}
