//! Partial assignments and sequences of them.

use std::fmt;

use crate::error::SequenceError;
use crate::signature::{Signature, Value, VarId};

/// A partial assignment from variables to values. Unassigned variables model
/// the unseen value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    slots: Vec<Option<Value>>,
}

impl State {
    /// The state with no assignments over `num_vars` variables.
    pub fn empty(num_vars: usize) -> Self {
        State {
            slots: vec![None; num_vars],
        }
    }

    pub fn from_slots(slots: Vec<Option<Value>>) -> Self {
        State { slots }
    }

    pub fn num_vars(&self) -> usize {
        self.slots.len()
    }

    #[inline]
    pub fn get(&self, var: VarId) -> Option<Value> {
        self.slots[var.index()]
    }

    #[inline]
    pub fn contains(&self, var: VarId) -> bool {
        self.slots[var.index()].is_some()
    }

    pub fn set(&mut self, var: VarId, value: Value) {
        self.slots[var.index()] = Some(value);
    }

    pub fn unset(&mut self, var: VarId) {
        self.slots[var.index()] = None;
    }

    pub fn with(mut self, var: VarId, value: Value) -> Self {
        self.set(var, value);
        self
    }

    /// Assigned variables in index order.
    pub fn domain(&self) -> impl Iterator<Item = VarId> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_some())
            .map(|(i, _)| VarId(i as u16))
    }

    pub fn assignments(&self) -> impl Iterator<Item = (VarId, Value)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (VarId(i as u16), v)))
    }

    pub fn len(&self) -> usize {
        self.slots.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.iter().all(|v| v.is_none())
    }

    pub fn is_total(&self) -> bool {
        self.slots.iter().all(|v| v.is_some())
    }

    /// Assignment-set inclusion: every assignment of `self` appears in `other`.
    pub fn is_subset(&self, other: &State) -> bool {
        self.slots
            .iter()
            .zip(&other.slots)
            .all(|(a, b)| a.is_none() || a == b)
    }

    /// Keeps only the assignments whose variable satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(VarId) -> bool) -> State {
        let slots = self
            .slots
            .iter()
            .enumerate()
            .map(|(i, v)| if keep(VarId(i as u16)) { *v } else { None })
            .collect();
        State { slots }
    }

    /// Assignments present in both states with equal values.
    pub fn intersection(&self, other: &State) -> State {
        let slots = self
            .slots
            .iter()
            .zip(&other.slots)
            .map(|(a, b)| if a == b { *a } else { None })
            .collect();
        State { slots }
    }

    /// Union of two assignments; `self` wins on conflicting values.
    pub fn union(&self, other: &State) -> State {
        let slots = self
            .slots
            .iter()
            .zip(&other.slots)
            .map(|(a, b)| a.or(*b))
            .collect();
        State { slots }
    }

    /// Overrides `base` with every assignment of `self`.
    pub fn override_onto(&self, base: &State) -> State {
        self.union(base)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> StateDisplay<'a> {
        StateDisplay { state: self, sig }
    }
}

pub struct StateDisplay<'a> {
    state: &'a State,
    sig: &'a Signature,
}

impl fmt::Display for StateDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (var, value)) in self
            .state
            .assignments()
            .filter(|(v, _)| self.sig.var(*v).agent.is_none())
            .enumerate()
        {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", self.sig.var_name(var), self.sig.fmt_value(value))?;
        }
        f.write_str("}")
    }
}

/// A non-empty sequence of states indexed by timestamp `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSequence {
    states: Vec<State>,
}

impl StateSequence {
    pub fn new(states: Vec<State>) -> Result<Self, SequenceError> {
        if states.is_empty() {
            return Err(SequenceError::Empty);
        }
        Ok(StateSequence { states })
    }

    pub fn singleton(state: State) -> Self {
        StateSequence {
            states: vec![state],
        }
    }

    /// Number of states, `n + 1`.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the final state.
    pub fn last_index(&self) -> usize {
        self.states.len() - 1
    }

    pub fn get(&self, t: usize) -> Option<&State> {
        self.states.get(t)
    }

    pub fn last(&self) -> &State {
        self.states.last().expect("sequences are non-empty")
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn iter(&self) -> std::slice::Iter<'_, State> {
        self.states.iter()
    }

    /// The prefix `[s_0, ..., s_t]`.
    pub fn slice(&self, t: usize) -> Result<StateSequence, SequenceError> {
        if t >= self.states.len() {
            return Err(SequenceError::OutOfRange {
                index: t as i64,
                len: self.states.len(),
            });
        }
        Ok(StateSequence {
            states: self.states[..=t].to_vec(),
        })
    }

    pub fn push(&mut self, state: State) {
        self.states.push(state);
    }

    pub fn extended(&self, state: State) -> StateSequence {
        let mut states = Vec::with_capacity(self.states.len() + 1);
        states.extend_from_slice(&self.states);
        states.push(state);
        StateSequence { states }
    }

    /// Applies `f` to every state.
    pub fn map(&self, f: impl FnMut(&State) -> State) -> StateSequence {
        StateSequence {
            states: self.states.iter().map(f).collect(),
        }
    }

    /// The values of `var` at each timestamp, `None` where unassigned.
    pub fn projection(&self, var: VarId) -> Vec<Option<Value>> {
        self.states.iter().map(|s| s.get(var)).collect()
    }
}

impl std::ops::Index<usize> for StateSequence {
    type Output = State;

    fn index(&self, t: usize) -> &State {
        &self.states[t]
    }
}

impl<'a> IntoIterator for &'a StateSequence {
    type Item = &'a State;
    type IntoIter = std::slice::Iter<'a, State>;

    fn into_iter(self) -> Self::IntoIter {
        self.states.iter()
    }
}
