//! Seeded random programs.
//!
//! A program generated at depth `d` has a node budget of `2^d`. Choices split
//! the remaining budget additively and sequencing splits it multiplicatively,
//! so both the node count and the number of answers stay within `2^d`.

use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ast::{Ast, Cont, Expr, Families};

pub const CONST_RANGE: std::ops::RangeInclusive<i64> = -3..=3;
const EXPR_DEPTH: u32 = 2;

pub struct Gen {
    rng: ChaCha8Rng,
    families: Families,
}

impl Gen {
    pub fn new(seed: u64, families: Families) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), families }
    }

    pub fn families(&self) -> Families {
        self.families
    }

    pub fn int(&mut self) -> i64 {
        self.rng.random_range(CONST_RANGE)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn wide_int(&mut self) -> i64 {
        self.rng.random()
    }

    pub fn expr(&mut self, scope: usize) -> Expr {
        self.expr_at(scope, EXPR_DEPTH)
    }

    fn expr_at(&mut self, scope: usize, depth: u32) -> Expr {
        if depth == 0 || self.rng.random_bool(0.6) {
            if scope > 0 && self.coin() {
                Expr::Var(self.below(scope))
            } else {
                Expr::Const(self.int())
            }
        } else {
            let a = Box::new(self.expr_at(scope, depth - 1));
            let b = Box::new(self.expr_at(scope, depth - 1));
            if self.coin() { Expr::Add(a, b) } else { Expr::Sub(a, b) }
        }
    }

    /// A program with at most `budget` nodes and `scope` variables in scope.
    pub fn program(&mut self, budget: usize, scope: usize) -> Ast {
        let budget = budget.max(1);
        let f = self.families;
        // Leaves get rarer as the budget grows, so programs use most of it.
        let leaf = match budget {
            0..4 => 3,
            4..16 => 1,
            _ => 0,
        };
        let mut options: Vec<(u32, u8)> = vec![(leaf, 0)];
        if f.nondet && budget < 16 {
            options.push((1, 1));
        }
        if budget >= 2 {
            if f.state {
                options.extend([(2, 3), (2, 4)]);
            }
            if f.modify {
                options.extend([(2, 5), (2, 6)]);
            }
        }
        if budget >= 3 {
            if f.nondet {
                options.push((4, 2));
            }
            options.push((2, 7));
        }
        let total: u32 = options.iter().map(|(w, _)| w).sum();
        let mut pick = self.rng.random_range(0..total);
        let mut tag = 0;
        for (w, t) in options {
            if pick < w {
                tag = t;
                break;
            }
            pick -= w;
        }
        match tag {
            0 => Ast::Ret(self.expr(scope)),
            1 => Ast::Fail,
            2 => {
                let left = self.rng.random_range(1..=budget - 2);
                let l = self.program(left, scope);
                let r = self.program(budget - 1 - left, scope);
                Ast::Or(Arc::new(l), Arc::new(r))
            }
            3 => Ast::GetBind(scope, Arc::new(self.program(budget - 1, scope + 1))),
            4 => Ast::Put(self.expr(scope), Arc::new(self.program(budget - 1, scope))),
            5 => Ast::MGetBind(scope, Arc::new(self.program(budget - 1, scope + 1))),
            6 => Ast::Update(self.expr(scope), Arc::new(self.program(budget - 1, scope))),
            _ => {
                let first = self.rng.random_range(1..=budget - 2);
                let second = (budget - 1 - first).min(budget / first).max(1);
                let p = self.program(first, scope);
                let q = self.program(second, scope + 1);
                Ast::Seq(Arc::new(p), scope, Arc::new(q))
            }
        }
    }

    pub fn cont(&mut self, budget: usize, scope: usize, arity: usize) -> Cont {
        Cont { base: scope, arity, body: self.program(budget, scope + arity) }
    }
}

/// The program for `seed`: deterministic, within the node budget `2^depth`,
/// and using only `families`.
pub fn gen_program(seed: u64, depth: u32, families: Families) -> Ast {
    Gen::new(seed, families).program(1usize << depth, 0)
}

/// Derives the per-trial seeds of a suite run.
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.random()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::difftest::ast::Construct;
    use std::collections::BTreeSet;

    #[test]
    fn depth_zero_gives_atoms() {
        for seed in 0..200 {
            let p = gen_program(seed, 0, Families::ALL);
            assert!(matches!(p, Ast::Ret(_) | Ast::Fail), "{p}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        for seed in 0..50 {
            assert_eq!(gen_program(seed, 6, Families::ALL), gen_program(seed, 6, Families::ALL));
        }
    }

    #[test]
    fn every_construct_appears_at_depth_six() {
        let mut seen = BTreeSet::new();
        for seed in 0..1000 {
            seen.extend(gen_program(seed, 6, Families::ALL).constructs());
        }
        let all = [
            Construct::Ret,
            Construct::Fail,
            Construct::Or,
            Construct::GetBind,
            Construct::Put,
            Construct::MGetBind,
            Construct::Update,
            Construct::Seq,
        ];
        assert_eq!(seen, all.into_iter().collect());
    }
}
