//! Retrieval, justified perspectives and their group forms.

use std::collections::{BTreeSet, HashMap};

use crate::error::SequenceError;
use crate::formula::Group;
use crate::observation::ObservationModel;
use crate::signature::{AgentId, Value, VarId};
use crate::state::{State, StateSequence};

/// A duplicate-free set of equal-length sequences, ordered structurally.
pub type PerspectiveSet = BTreeSet<StateSequence>;

/// Value of `v` at timestamp `ts`, else the latest earlier value, else the
/// earliest later one. `ts = -1` means the variable was never seen and
/// retrieves nothing.
pub fn retrieve(seq: &StateSequence, ts: i64, v: VarId) -> Result<Option<Value>, SequenceError> {
    if ts < -1 || ts > seq.last_index() as i64 {
        return Err(SequenceError::OutOfRange {
            index: ts,
            len: seq.len(),
        });
    }
    Ok(retrieve_in(seq.states(), ts, v))
}

fn retrieve_in(states: &[State], ts: i64, v: VarId) -> Option<Value> {
    if ts < 0 {
        return None;
    }
    let ts = ts as usize;
    if let Some(x) = states[ts].get(v) {
        return Some(x);
    }
    if let Some(x) = states[..ts].iter().rev().find_map(|s| s.get(v)) {
        return Some(x);
    }
    states[ts + 1..].iter().find_map(|s| s.get(v))
}

/// Builds a justified sequence where `visible(t, v)` says whether the
/// observer looks at `v` in state `t`.
fn justify(seq: &StateSequence, mut visible: impl FnMut(&State, VarId) -> bool) -> StateSequence {
    let states = seq.states();
    let num_vars = states[0].num_vars();
    let mut last_seen: Vec<i64> = vec![-1; num_vars];
    let mut out = Vec::with_capacity(states.len());
    for (t, state) in states.iter().enumerate() {
        let mut next = State::empty(num_vars);
        for (i, lt) in last_seen.iter_mut().enumerate() {
            let v = VarId(i as u16);
            if visible(state, v) {
                *lt = t as i64;
            }
            if let Some(e) = retrieve_in(&states[..=t], *lt, v) {
                next.set(v, e);
            }
        }
        out.push(next);
    }
    StateSequence::new(out).expect("input is non-empty")
}

/// The sequence of states `agent` believes given the sequence `seq`.
pub fn justified_perspective(
    model: &dyn ObservationModel,
    agent: AgentId,
    seq: &StateSequence,
) -> StateSequence {
    justify(seq, |s, v| model.sees(agent, s, v))
}

/// `{ f_i(seq) | i ∈ group }`.
pub fn uniform_perspectives(
    model: &dyn ObservationModel,
    group: &Group,
    seq: &StateSequence,
) -> PerspectiveSet {
    group
        .members()
        .iter()
        .map(|&i| justified_perspective(model, i, seq))
        .collect()
}

/// The justified perspective of the group's pooled observations.
pub fn distributed_perspective(
    model: &dyn ObservationModel,
    group: &Group,
    seq: &StateSequence,
) -> StateSequence {
    justify(seq, |s, v| group.members().iter().any(|&i| model.sees(i, s, v)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FixedPointStats {
    /// Applications of `ef` up to and including the one that changed nothing.
    pub iterations: usize,
    pub final_size: usize,
}

/// Memoises `f_i` for one evaluation.
#[derive(Default)]
pub struct PerspectiveCache {
    individual: HashMap<(AgentId, StateSequence), StateSequence>,
}

impl PerspectiveCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clear(&mut self) {
        self.individual.clear();
    }

    pub fn justified(
        &mut self,
        model: &dyn ObservationModel,
        agent: AgentId,
        seq: &StateSequence,
    ) -> StateSequence {
        if let Some(hit) = self.individual.get(&(agent, seq.clone())) {
            return hit.clone();
        }
        let out = justified_perspective(model, agent, seq);
        self.individual.insert((agent, seq.clone()), out.clone());
        out
    }

    pub fn uniform(
        &mut self,
        model: &dyn ObservationModel,
        group: &Group,
        seq: &StateSequence,
    ) -> PerspectiveSet {
        group
            .members()
            .iter()
            .map(|&i| self.justified(model, i, seq))
            .collect()
    }

    /// Iterates `S ↦ ⋃_{w ∈ S} ef(w)` from `seed` until the set repeats.
    pub fn common(
        &mut self,
        model: &dyn ObservationModel,
        group: &Group,
        seed: &PerspectiveSet,
    ) -> (PerspectiveSet, FixedPointStats) {
        let mut current = seed.clone();
        let mut iterations = 0;
        loop {
            let next: PerspectiveSet = current
                .iter()
                .flat_map(|w| self.uniform(model, group, w))
                .collect();
            iterations += 1;
            if next == current {
                let final_size = next.len();
                return (
                    next,
                    FixedPointStats {
                        iterations,
                        final_size,
                    },
                );
            }
            current = next;
        }
    }
}

/// The common justified perspectives reachable from `seed`.
pub fn common_perspectives(
    model: &dyn ObservationModel,
    group: &Group,
    seed: &PerspectiveSet,
) -> (PerspectiveSet, FixedPointStats) {
    PerspectiveCache::new().common(model, group, seed)
}

/// What the whole group commonly observes of `state`: `⋂_i O_i` iterated to
/// its fixed point. Also returns the number of rounds that removed something.
pub fn common_observation_rounds(
    model: &dyn ObservationModel,
    group: &Group,
    state: &State,
) -> (State, usize) {
    let mut current = state.clone();
    let mut rounds = 0;
    loop {
        let next = group
            .members()
            .iter()
            .map(|&i| model.observe(i, &current))
            .reduce(|a, b| a.intersection(&b))
            .expect("groups are non-empty");
        if next == current {
            return (current, rounds);
        }
        rounds += 1;
        current = next;
    }
}

pub fn common_observation(model: &dyn ObservationModel, group: &Group, state: &State) -> State {
    common_observation_rounds(model, group, state).0
}

/// `⋃_{i ∈ G} O_i(s)`.
pub fn group_observation(model: &dyn ObservationModel, group: &Group, state: &State) -> State {
    group
        .members()
        .iter()
        .map(|&i| model.observe(i, state))
        .reduce(|a, b| a.union(&b))
        .expect("groups are non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observation::{GuardedModel, Visibility};
    use crate::signature::Signature;

    fn seq_of(vals: &[&[Option<i64>]]) -> StateSequence {
        StateSequence::new(
            vals.iter()
                .map(|s| State::from_slots(s.iter().map(|v| v.map(Value::Int)).collect()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn retrieve_present_value() {
        let seq = seq_of(&[&[Some(2)]]);
        assert_eq!(retrieve(&seq, 0, VarId(0)), Ok(Some(Value::Int(2))));
    }

    #[test]
    fn retrieve_prefers_earlier_then_later() {
        let seq = seq_of(&[&[None], &[Some(7)], &[None], &[Some(9)]]);
        assert_eq!(retrieve(&seq, 2, VarId(0)), Ok(Some(Value::Int(7))));
        assert_eq!(retrieve(&seq, 0, VarId(0)), Ok(Some(Value::Int(7))));
        let later = seq_of(&[&[None], &[None], &[Some(1)]]);
        assert_eq!(retrieve(&later, 1, VarId(0)), Ok(Some(Value::Int(1))));
        assert_eq!(retrieve(&later, -1, VarId(0)), Ok(None));
        assert!(retrieve(&later, 3, VarId(0)).is_err());
        assert!(retrieve(&later, -2, VarId(0)).is_err());
    }

    /// x, y with a seeing both at time 0, b seeing y at 1, c seeing x at 2.
    fn example_pooled() -> (Signature, GuardedModel, Group, StateSequence) {
        let mut b = Signature::builder();
        let a = b.agent("a").unwrap();
        let bb = b.agent("b").unwrap();
        let c = b.agent("c").unwrap();
        let time = b.int_var("time", 0, 2).unwrap();
        let x = b.int_var("x", 1, 6).unwrap();
        let y = b.int_var("y", 1, 6).unwrap();
        let sig = b.build();
        let at = |t: i64| Visibility::When(vec![vec![(time, Value::Int(t))]]);
        let mut m = GuardedModel::builder("pooled", &sig);
        m.public(time)
            .set(a, x, at(0))
            .set(a, y, at(0))
            .set(bb, y, at(1))
            .set(c, x, at(2));
        let model = m.build().unwrap();
        let st = |t: i64, xv: i64, yv: i64| {
            State::empty(sig.num_vars())
                .with(sig.agent_var(a), Value::Sym(sig.lookup_symbol("a").unwrap()))
                .with(sig.agent_var(bb), Value::Sym(sig.lookup_symbol("b").unwrap()))
                .with(sig.agent_var(c), Value::Sym(sig.lookup_symbol("c").unwrap()))
                .with(time, Value::Int(t))
                .with(x, Value::Int(xv))
                .with(y, Value::Int(yv))
        };
        let seq = StateSequence::new(vec![st(0, 1, 2), st(1, 3, 4), st(2, 5, 6)]).unwrap();
        let group = Group::new(vec![a, bb, c]).unwrap();
        (sig, model, group, seq)
    }

    #[test]
    fn distributed_perspective_pools_latest_observations() {
        let (sig, model, group, seq) = example_pooled();
        let x = sig.lookup_var("x").unwrap();
        let y = sig.lookup_var("y").unwrap();
        let df = distributed_perspective(&model, &group, &seq);
        let proj = |v| df.projection(v);
        let ints = |xs: &[i64]| xs.iter().map(|&n| Some(Value::Int(n))).collect::<Vec<_>>();
        assert_eq!(proj(x), ints(&[1, 1, 5]));
        assert_eq!(proj(y), ints(&[2, 4, 4]));
    }

    #[test]
    fn retrieve_on_pooled_observation() {
        let (sig, model, group, seq) = example_pooled();
        let y = sig.lookup_var("y").unwrap();
        let pooled = seq.map(|s| group_observation(&model, &group, s));
        assert_eq!(retrieve(&pooled, 1, y), Ok(Some(Value::Int(4))));
    }

    #[test]
    fn common_observation_chained_removal() {
        let mut b = Signature::builder();
        let a = b.agent("a").unwrap();
        let bb = b.agent("b").unwrap();
        let v = b.bool_var("v").unwrap();
        let w = b.bool_var("w").unwrap();
        let sig = b.build();
        let mut m = GuardedModel::builder("chain", &sig);
        m.set(a, v, Visibility::Always)
            .set(
                a,
                w,
                Visibility::When(vec![vec![(v, Value::Bool(true))]]),
            )
            .set(bb, w, Visibility::Always);
        let model = m.build().unwrap();
        let s = State::empty(sig.num_vars())
            .with(sig.agent_var(a), Value::Sym(sig.lookup_symbol("a").unwrap()))
            .with(sig.agent_var(bb), Value::Sym(sig.lookup_symbol("b").unwrap()))
            .with(v, Value::Bool(true))
            .with(w, Value::Bool(false));
        let g = Group::new(vec![a, bb]).unwrap();
        let (co, rounds) = common_observation_rounds(&model, &g, &s);
        assert!(!co.contains(v));
        assert!(!co.contains(w));
        assert_eq!(rounds, 2);
        assert!(co.is_subset(&s));
    }
}
