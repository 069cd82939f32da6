mod common;

use gjp::domains::BenchSet;
use gjp::parser::{parse_domain, parse_formula, parse_trace};
use gjp::planner::Domain;
use gjp::{eval, Evaluator, Formula, State, StateSequence, Ternary};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PLAN1: &str = include_str!("../benchmarks/number/plan1.trace");

fn number() -> Domain {
    parse_domain(BenchSet::Number.domain_text()).unwrap()
}

fn value(d: &Domain, trace: &str, formula: &str) -> Ternary {
    let seq = parse_trace(trace, d).unwrap().sequence(d).unwrap();
    eval(&*d.model, &d.sig, &seq, &parse_formula(formula, &d.sig).unwrap())
}

#[test]
fn plan1_beliefs() {
    let d = number();
    for (phi, want) in [
        ("(CB (a b) (< n 3))", Ternary::True),
        ("(EB (a b) (< n 3))", Ternary::True),
        ("(EB (a b) (= n 1))", Ternary::False),
        ("(B a (= n 2))", Ternary::True),
        ("(B b (= n 1))", Ternary::True),
        ("(DB (a b) (= n 1))", Ternary::True),
        ("(B a (B b (= n 2)))", Ternary::True),
        ("(= n 1)", Ternary::True),
    ] {
        assert_eq!(value(&d, PLAN1, phi), want, "{phi}");
    }
}

#[test]
fn seeing_and_knowing_on_plan1() {
    let d = number();
    assert_eq!(value(&d, PLAN1, "(S b n)"), Ternary::True);
    assert_eq!(value(&d, PLAN1, "(S a n)"), Ternary::False);
    assert_eq!(value(&d, PLAN1, "(K b (= n 1))"), Ternary::True);
    assert_eq!(value(&d, PLAN1, "(K a (= n 1))"), Ternary::False);
    assert_eq!(value(&d, PLAN1, "(ES (a b) n)"), Ternary::False);
    assert_eq!(value(&d, PLAN1, "(DS (a b) n)"), Ternary::True);
    assert_eq!(value(&d, PLAN1, "(CK (a b) (= n 1))"), Ternary::False);
}

#[test]
fn initially_visible_variable_is_seen() {
    let d = number();
    let empty = "trace t\ninit peeking_a = false, peeking_b = false, n = 2\n";
    assert_eq!(value(&d, empty, "(S a peeking_b)"), Ternary::True);
    assert_eq!(value(&d, empty, "(S a n)"), Ternary::False);
    assert_eq!(value(&d, empty, "(B a (= n 2))"), Ternary::Unknown);
}

#[test]
fn unassigned_variables_and_absent_agents_are_unknown() {
    let d = number();
    let partial = "trace t\nstate peeking_a = true\n";
    assert_eq!(value(&d, partial, "(S a n)"), Ternary::Unknown);
    assert_eq!(value(&d, partial, "(S a (= n 2))"), Ternary::Unknown);

    let sig = &d.sig;
    let var = |s| sig.lookup_var(s).unwrap();
    let no_agents = State::empty(sig.num_vars())
        .with(var("peeking_a"), gjp::Value::Bool(true))
        .with(var("n"), gjp::Value::Int(2));
    let seq = StateSequence::singleton(no_agents);
    let phi = |s| parse_formula(s, sig).unwrap();
    assert_eq!(eval(&*d.model, sig, &seq, &phi("(S a n)")), Ternary::Unknown);
    assert_eq!(eval(&*d.model, sig, &seq, &phi("(CS (a b) n)")), Ternary::Unknown);
    assert_eq!(eval(&*d.model, sig, &seq, &phi("(DS (a b) n)")), Ternary::Unknown);
}

#[test]
fn evaluator_counts_calls_and_fixed_points() {
    let d = number();
    let seq = parse_trace(PLAN1, &d).unwrap().sequence(&d).unwrap();
    let mut ev = Evaluator::new(&*d.model, &d.sig);
    ev.eval(&seq, &parse_formula("(CB (a b) (< n 3))", &d.sig).unwrap());
    ev.eval(&seq, &parse_formula("(EB (a b) (< n 3))", &d.sig).unwrap());
    let stats = ev.take_stats();
    assert_eq!(stats.external_calls, 2);
    assert_eq!(stats.common_evals, 1);
    assert_eq!(stats.common_max, 3);
    assert_eq!(ev.stats().external_calls, 0);
}

proptest! {
    #[test]
    fn double_negation_is_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = common::random_instance(&mut rng, 4, false);
        if let Some(phi) = common::random_modal(&inst, &mut rng) {
            let twice = Formula::not(Formula::not(phi.clone()));
            prop_assert_eq!(
                eval(&*inst.model, &inst.sig, &inst.seq, &twice),
                eval(&*inst.model, &inst.sig, &inst.seq, &phi)
            );
        }
    }

    #[test]
    fn knowledge_is_truth_and_seeing(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = common::random_instance(&mut rng, 4, false);
        if let Some(phi) = common::random_body(&inst, &mut rng) {
            let a = inst.agents()[0];
            let k = eval(&*inst.model, &inst.sig, &inst.seq, &Formula::knows(a, phi.clone()));
            let parts = Formula::and(phi.clone(), Formula::sees(a, phi));
            prop_assert_eq!(k, eval(&*inst.model, &inst.sig, &inst.seq, &parts));
        }
    }
}
