//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use gjp::formula::{Atom, Formula, Group, GroupMode, Relation, Term};
use gjp::observation::random_state;
use gjp::{AgentId, Ternary, GuardedModel, ObservationModel, Signature, State, StateSequence, Value, VarId, Visibility};
use rand::seq::SliceRandom;
use rand::Rng;

/// A signature, a model satisfying the observation axioms, and a sequence.
pub struct Instance {
    pub sig: Signature,
    pub model: Arc<dyn ObservationModel>,
    pub seq: StateSequence,
}

impl Instance {
    pub fn agents(&self) -> Vec<AgentId> {
        self.sig.agents().collect()
    }

    pub fn group(&self) -> Group {
        Group::new(self.agents()).unwrap()
    }

    pub fn plain_vars(&self) -> Vec<VarId> {
        self.sig.vars().filter(|v| self.sig.var(*v).agent.is_none()).collect()
    }
}

/// At most four variables in total, domains of at most three values.
pub fn random_signature(rng: &mut impl Rng) -> Signature {
    let mut b = Signature::builder();
    let agents = rng.gen_range(1..=2);
    for name in ["a", "b"].iter().take(agents) {
        b.agent(name).unwrap();
    }
    let vars = rng.gen_range(1..=4 - agents);
    for k in 0..vars {
        let name = format!("x{k}");
        match rng.gen_range(0..3) {
            0 => b.bool_var(&name).unwrap(),
            1 => b.int_var(&name, 0, rng.gen_range(0..=2)).unwrap(),
            _ => b.enum_var(&name, &["p", "q", "r"][..rng.gen_range(1..=3)]).unwrap(),
        };
    }
    b.build()
}

/// Per agent and variable: never, always, or guarded on an earlier variable.
pub fn random_model(sig: &Signature, rng: &mut impl Rng) -> Arc<dyn ObservationModel> {
    let mut b = GuardedModel::builder("random", sig);
    let plain: Vec<VarId> = sig.vars().filter(|v| sig.var(*v).agent.is_none()).collect();
    for agent in sig.agents() {
        for (k, &v) in plain.iter().enumerate() {
            let rule = match rng.gen_range(0..4) {
                0 => Visibility::Never,
                1 | 2 if k > 0 => {
                    let g = plain[rng.gen_range(0..k)];
                    let values = sig.domain(g).values();
                    Visibility::When(vec![vec![(g, *values.choose(rng).unwrap())]])
                }
                _ => Visibility::Always,
            };
            b.set(agent, v, rule);
        }
    }
    Arc::new(b.build().expect("guards point at earlier variables"))
}

pub fn global_state(sig: &Signature, rng: &mut impl Rng) -> State {
    random_state(sig, rng, 1.0)
}

/// Up to six states; partial unless `global`.
pub fn random_instance(rng: &mut impl Rng, max_len: usize, global: bool) -> Instance {
    let sig = random_signature(rng);
    let model = random_model(&sig, rng);
    let len = rng.gen_range(1..=max_len);
    let states = (0..len)
        .map(|_| {
            let mut s = random_state(&sig, rng, if global { 1.0 } else { 0.7 });
            for a in sig.agents() {
                let v = sig.agent_var(a);
                s.set(v, sig.domain(v).values()[0]);
            }
            s
        })
        .collect();
    let seq = StateSequence::new(states).unwrap();
    Instance { sig, model, seq }
}

/// Whether `atom` is true for some value of its variable and false for another.
pub fn contingent(inst: &Instance, atom: &Atom) -> bool {
    let outcomes: Vec<Ternary> = inst
        .sig
        .domain(atom.lhs)
        .values()
        .into_iter()
        .map(|x| atom.interpret(&State::empty(inst.sig.num_vars()).with(atom.lhs, x)))
        .collect();
    outcomes.contains(&Ternary::True) && outcomes.contains(&Ternary::False)
}

/// A contingent literal over `v`, if its domain admits one.
pub fn random_literal(inst: &Instance, v: VarId, rng: &mut impl Rng) -> Option<Formula> {
    if inst.sig.domain(v).size() < 2 {
        return None;
    }
    loop {
        let value: Value = *inst.sig.domain(v).values().choose(rng).unwrap();
        let rel = if matches!(value, Value::Int(_)) {
            *Relation::ALL.choose(rng).unwrap()
        } else {
            *[Relation::Eq, Relation::Ne].choose(rng).unwrap()
        };
        let atom = Atom::new(rel, v, Term::Const(value));
        if !contingent(inst, &atom) {
            continue;
        }
        let atom = Formula::Atom(atom);
        return Some(if rng.gen_bool(0.3) { Formula::not(atom) } else { atom });
    }
}

/// A conjunction of contingent literals over distinct variables, so that its
/// truth is settled exactly when the assigned variables settle it.
pub fn random_body(inst: &Instance, rng: &mut impl Rng) -> Option<Formula> {
    let mut vars = inst.plain_vars();
    vars.shuffle(rng);
    let k = rng.gen_range(1..=vars.len().min(3));
    Formula::conjunction(vars.iter().filter_map(|&v| random_literal(inst, v, rng)).take(k))
}

/// `body` under one randomly chosen modal operator, or bare.
pub fn random_modal(inst: &Instance, rng: &mut impl Rng) -> Option<Formula> {
    let body = random_body(inst, rng)?;
    let agent = *inst.agents().choose(rng).unwrap();
    let mode = *[GroupMode::Uniform, GroupMode::Distributed, GroupMode::Common].choose(rng).unwrap();
    Some(match rng.gen_range(0..6) {
        0 => body,
        1 => Formula::believes(agent, body),
        2 => Formula::knows(agent, body),
        3 => Formula::sees(agent, body),
        4 => Formula::group_believes(mode, inst.group(), body),
        _ => Formula::group_knows(mode, inst.group(), body),
    })
}
