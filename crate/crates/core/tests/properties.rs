use effsim::difftest::lower::{TwoStates, cont_fn};
use effsim::difftest::{Families, Gen, gen_program, lower, oracle_eval, Mode};
use effsim::effect::{NilF, StateNondet, Tree, Undo, rotate, structural_eq, swap};
use effsim::effect::ModifyNondet;
use effsim::machines::{simulate_tf_traced, trail_discipline_violation};
use effsim::semantics::{h_local, h_local_m, h_nil};
use proptest::prelude::*;

type Sig = StateNondet<i64, NilF>;

fn program(seed: u64, depth: u32) -> Tree<Sig, i64> {
    lower(&gen_program(seed, depth, Families::STATE_NONDET)).unwrap()
}

fn cont(seed: u64) -> impl Fn(i64) -> Tree<Sig, i64> + 'static {
    let mut g = Gen::new(seed, Families::STATE_NONDET);
    cont_fn(&g.cont(8, 0, 1)).unwrap()
}

proptest! {
    #[test]
    fn left_identity(a in -5i64..5, seed: u64) {
        let f = cont(seed);
        let lhs = Tree::<Sig, i64>::leaf(a).bind(cont(seed));
        prop_assert!(structural_eq(&lhs, &f(a)));
    }

    #[test]
    fn right_identity(seed: u64, depth in 0u32..6) {
        let t = program(seed, depth);
        prop_assert!(structural_eq(&t.bind(Tree::leaf), &t));
    }

    #[test]
    fn associativity(seed: u64, fs: u64, gs: u64, depth in 0u32..5) {
        let t = program(seed, depth);
        let lhs = t.bind(cont(fs)).bind(cont(gs));
        let (f, g) = (cont(fs), std::rc::Rc::new(cont(gs)));
        let rhs = t.bind(move |x| { let g = g.clone(); f(x).bind(move |y| g(y)) });
        prop_assert!(structural_eq(&lhs, &rhs));
    }

    #[test]
    fn swap_twice_is_identity(seed: u64, depth in 0u32..6) {
        let t = program(seed, depth);
        prop_assert!(structural_eq(&swap(&swap(&t)), &t));
    }

    #[test]
    fn rotate_thrice_is_identity(seed: u64, depth in 0u32..6) {
        let t: Tree<TwoStates, i64> = lower(&gen_program(seed, depth, Families::ALL)).unwrap();
        prop_assert!(structural_eq(&rotate(&rotate(&rotate(&t))), &t));
    }

    #[test]
    fn integer_deltas_undo(s: i64, r: i64) {
        prop_assert_eq!(s.apply(&r).revert(&r), s);
        prop_assert_eq!(s.revert(&r).apply(&r), s);
    }

    #[test]
    fn generated_programs_respect_their_budget(seed: u64, depth in 0u32..=10) {
        for fam in [Families::NONDET, Families::STATE_NONDET, Families::MODIFY_NONDET, Families::ALL] {
            let p = gen_program(seed, depth, fam);
            prop_assert!(p.node_count() <= 1 << depth, "{} nodes: {}", p.node_count(), p);
            prop_assert!(p.answer_bound() <= 1 << depth);
            prop_assert!(p.well_scoped(0));
            prop_assert!(p.families().subset_of(fam));
        }
    }

    #[test]
    fn generation_is_deterministic(seed: u64, depth in 0u32..=8) {
        let a = gen_program(seed, depth, Families::ALL).to_string();
        let b = gen_program(seed, depth, Families::ALL).to_string();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn answers_fit_the_bound(seed: u64, depth in 0u32..=8, s in -3i64..=3) {
        let p = gen_program(seed, depth, Families::STATE_NONDET);
        let answers = oracle_eval(&p, s, Mode::Local).answers;
        prop_assert!(answers.len() <= p.answer_bound());
        let t: Tree<Sig, i64> = lower(&p).unwrap();
        prop_assert_eq!(h_nil(&h_local(&t, s)), answers);
    }

    #[test]
    fn trail_machine_keeps_discipline_and_terminates(seed: u64, depth in 0u32..=7, s in -3i64..=3) {
        let p = gen_program(seed, depth, Families::MODIFY_NONDET);
        let t: Tree<ModifyNondet<i64, i64, NilF>, i64> = lower(&p).unwrap();
        let (out, trace) = simulate_tf_traced(&t, s);
        prop_assert_eq!(h_nil(&out), h_nil(&h_local_m(&t, s)));
        let trace = trace.borrow();
        prop_assert_eq!(trail_discipline_violation(&trace), None);
        let cap = 4 * p.node_count() * (p.answer_bound() + 1);
        prop_assert!(trace.steps.len() <= cap, "{} steps, cap {cap}: {p}", trace.steps.len());
    }
}
