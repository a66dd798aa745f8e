//! Translations that lower local-state programs towards a single global
//! state, and the pipelines that compose them.

pub mod local2global;
pub mod modify;
pub mod nondet;
pub mod simulate;
pub mod states;
pub mod trail;

pub use local2global::{local2global, put_r};
pub use modify::local2global_m;
pub use nondet::{
    ChoiceStack, ChoiceStackF, append_s, append_ss, extract_s, extract_ss, nondet2state,
    nondet2state_s, pop_s, pop_ss, push_s, push_ss, run_nd, run_nd_fwd,
};
pub use simulate::{extract, simulate};
pub use states::{alpha, alpha_inv, flatten, nest, states2state};
pub use trail::{
    TrailEntry, TrailStack, Trailed, extract_t, local2trail, pop_stack, push_stack, simulate_t,
    untrail,
};
