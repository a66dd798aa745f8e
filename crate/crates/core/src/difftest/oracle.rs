//! A direct depth-first evaluator for programs, written without trees or
//! handlers. Every handler-based check is anchored against it.

use serde::Serialize;

use super::ast::Ast;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every branch of a choice starts from the state at the choice.
    Local,
    /// One state is threaded through all branches in order.
    Global,
}

/// How get/put and mget/update map onto the oracle's two integer cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    /// Both operation families act on one state.
    Shared,
    /// Get/put act on the first cell, mget/update on the second.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleOutcome {
    pub mode: Mode,
    pub answers: Vec<i64>,
    /// The state after the whole search; reported in global mode only.
    pub final_state: Option<i64>,
}

type Cells = [i64; 2];

struct Eval {
    mode: Mode,
    modify_cell: usize,
}

impl Eval {
    /// Runs `p`, feeding each answer and the state it was produced in to `k`.
    /// Returns the state after `p` and everything after it has finished.
    fn run(&self, p: &Ast, env: &[i64], mut s: Cells, k: &mut dyn FnMut(i64, Cells) -> Cells) -> Cells {
        match p {
            Ast::Ret(e) => k(e.eval(env), s),
            Ast::Fail => s,
            Ast::Or(l, r) => {
                let after = self.run(l, env, s, k);
                match self.mode {
                    Mode::Local => self.run(r, env, s, k),
                    Mode::Global => self.run(r, env, after, k),
                }
            }
            Ast::GetBind(_, q) => self.run(q, &extend(env, s[0]), s, k),
            Ast::MGetBind(_, q) => self.run(q, &extend(env, s[self.modify_cell]), s, k),
            Ast::Put(e, q) => {
                s[0] = e.eval(env);
                self.run(q, env, s, k)
            }
            Ast::Update(e, q) => {
                let c = self.modify_cell;
                s[c] = s[c].wrapping_add(e.eval(env));
                self.run(q, env, s, k)
            }
            Ast::Seq(first, _, then) => {
                self.run(first, env, s, &mut |x, s1| self.run(then, &extend(env, x), s1, k))
            }
        }
    }
}

fn extend(env: &[i64], x: i64) -> Vec<i64> {
    let mut out = env.to_vec();
    out.push(x);
    out
}

/// Evaluates `p` over two integer cells. Returns the answers in search order
/// and the cells after the search.
pub fn oracle_run(p: &Ast, cells: (i64, i64), mode: Mode, layout: Layout) -> (Vec<i64>, (i64, i64)) {
    let ev = Eval { mode, modify_cell: if layout == Layout::Shared { 0 } else { 1 } };
    let mut answers = Vec::new();
    let end = ev.run(p, &[], [cells.0, cells.1], &mut |x, s| {
        answers.push(x);
        s
    });
    (answers, (end[0], end[1]))
}

/// Evaluates `p` from the single integer state `s0`.
pub fn oracle_eval(p: &Ast, s0: i64, mode: Mode) -> OracleOutcome {
    let (answers, (end, _)) = oracle_run(p, (s0, 0), mode, Layout::Shared);
    OracleOutcome { mode, answers, final_state: (mode == Mode::Global).then_some(end) }
}
