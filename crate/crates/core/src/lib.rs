//! Backtracking effects as effect trees, lowered step by step from
//! local-state handlers to a single-state machine with choicepoint and trail
//! stacks, plus a differential tester that checks every step.

pub mod cli;
pub mod difftest;
pub mod effect;
pub mod semantics;
pub mod translations;
pub mod machines;
pub mod queens;
