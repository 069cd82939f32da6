//! Brute-force Boolean semantics that quantifies over every global sequence
//! completing a partial one. Exponential; intended for tiny test instances.

use std::collections::BTreeSet;

use crate::error::OracleError;
use crate::formula::{Formula, Group, GroupMode, Seeable};
use crate::observation::ObservationModel;
use crate::perspective::{
    common_observation, common_perspectives, distributed_perspective, group_observation,
    uniform_perspectives,
};
use crate::signature::{Signature, Value};
use crate::state::{State, StateSequence};

pub const DEFAULT_CEILING: u128 = 1_000_000;

/// Every global sequence of a fixed length.
pub struct CompletionSpace<'a> {
    sig: &'a Signature,
    len: usize,
    values: Vec<Vec<Value>>,
    size: u128,
}

impl<'a> CompletionSpace<'a> {
    pub fn new(sig: &'a Signature, len: usize, ceiling: u128) -> Result<Self, OracleError> {
        let per_state = sig
            .vars()
            .fold(1u128, |acc, v| acc.saturating_mul(sig.domain(v).size() as u128));
        let size = (0..len).fold(1u128, |acc, _| acc.saturating_mul(per_state));
        if size > ceiling {
            return Err(OracleError::TooLarge { size, ceiling });
        }
        let values = sig.vars().map(|v| sig.domain(v).values()).collect();
        Ok(CompletionSpace {
            sig,
            len,
            values,
            size,
        })
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    /// Calls `f` on every sequence until it returns `false`; reports whether
    /// `f` held throughout.
    pub fn all(&self, mut f: impl FnMut(&StateSequence) -> bool) -> bool {
        let nv = self.sig.num_vars();
        let mut digits = vec![0usize; self.len * nv];
        loop {
            let states = (0..self.len)
                .map(|t| {
                    State::from_slots(
                        (0..nv)
                            .map(|v| Some(self.values[v][digits[t * nv + v]]))
                            .collect(),
                    )
                })
                .collect();
            let seq = StateSequence::new(states).expect("length is positive");
            if !f(&seq) {
                return false;
            }
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return true;
                }
                digits[k] += 1;
                if digits[k] < self.values[k % nv].len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }
}

/// `g[w]`: each state of `g` overwritten by the matching state of `w`.
fn override_seq(g: &StateSequence, w: &StateSequence) -> StateSequence {
    let states = g
        .iter()
        .zip(w.iter())
        .map(|(gs, ws)| ws.override_onto(gs))
        .collect();
    StateSequence::new(states).expect("non-empty")
}

struct Oracle<'a> {
    model: &'a dyn ObservationModel,
    space: CompletionSpace<'a>,
}

impl Oracle<'_> {
    fn forall_completions(&self, w: &StateSequence, phi: &Formula) -> bool {
        self.space.all(|g| self.sat(&override_seq(g, w), phi))
    }

    fn settled(&self, w: &StateSequence, phi: &Formula) -> bool {
        let neg = Formula::not(phi.clone());
        self.forall_completions(w, phi) || self.forall_completions(w, &neg)
    }

    fn sees(&self, seq: &StateSequence, group: &[crate::signature::AgentId], mode: GroupMode, s: &Seeable) -> bool {
        let g = Group::new(group.to_vec()).expect("non-empty");
        let project = |st: &State| match mode {
            GroupMode::Uniform => self.model.observe(group[0], st),
            GroupMode::Distributed => group_observation(self.model, &g, st),
            GroupMode::Common => common_observation(self.model, &g, st),
        };
        match s {
            Seeable::Var(v) => project(seq.last()).contains(*v),
            Seeable::Formula(f) => self.settled(&seq.map(project), f),
        }
    }

    fn sat(&self, seq: &StateSequence, phi: &Formula) -> bool {
        match phi {
            Formula::Atom(a) => a.interpret(seq.last()) == crate::ternary::Ternary::True,
            Formula::Not(f) => !self.sat(seq, f),
            Formula::And(a, b) => self.sat(seq, a) && self.sat(seq, b),
            Formula::Sees(i, s) => self.sees(seq, &[*i], GroupMode::Uniform, s),
            Formula::Knows(i, f) => {
                self.sat(seq, f) && self.sees(seq, &[*i], GroupMode::Uniform, &Seeable::Formula(f.clone()))
            }
            Formula::Believes(i, f) => {
                let w = crate::perspective::justified_perspective(self.model, *i, seq);
                self.forall_completions(&w, f)
            }
            Formula::GroupSees(mode, g, s) => self.group_sees(seq, *mode, g, s),
            Formula::GroupKnows(mode, g, f) => {
                self.sat(seq, f) && self.group_sees(seq, *mode, g, &Seeable::Formula(f.clone()))
            }
            Formula::GroupBelieves(mode, g, f) => {
                let set: BTreeSet<StateSequence> = match mode {
                    GroupMode::Uniform => uniform_perspectives(self.model, g, seq),
                    GroupMode::Distributed => {
                        BTreeSet::from([distributed_perspective(self.model, g, seq)])
                    }
                    GroupMode::Common => {
                        common_perspectives(self.model, g, &BTreeSet::from([seq.clone()])).0
                    }
                };
                set.iter().all(|w| self.forall_completions(w, f))
            }
        }
    }

    fn group_sees(&self, seq: &StateSequence, mode: GroupMode, g: &Group, s: &Seeable) -> bool {
        match mode {
            GroupMode::Uniform => g
                .members()
                .iter()
                .all(|&i| self.sees(seq, &[i], GroupMode::Uniform, s)),
            _ => self.sees(seq, g.members(), mode, s),
        }
    }
}

/// Whether `phi` holds at `seq` under the complete semantics.
pub fn complete_eval(
    model: &dyn ObservationModel,
    sig: &Signature,
    seq: &StateSequence,
    phi: &Formula,
    ceiling: u128,
) -> Result<bool, OracleError> {
    let space = CompletionSpace::new(sig, seq.len(), ceiling)?;
    Ok(Oracle { model, space }.sat(seq, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{Relation, Term};
    use crate::observation::{GuardedModel, Visibility};
    use crate::signature::AgentId;

    fn one_var() -> (Signature, AgentId, crate::signature::VarId) {
        let mut b = Signature::builder();
        let a = b.agent("a").unwrap();
        let v = b.bool_var("v").unwrap();
        (b.build(), a, v)
    }

    #[test]
    fn visible_variable_is_seen() {
        let (sig, a, v) = one_var();
        let mut m = GuardedModel::builder("m", &sig);
        m.public(v);
        let model = m.build().unwrap();
        let s = State::empty(sig.num_vars())
            .with(sig.agent_var(a), Value::Sym(sig.lookup_symbol("a").unwrap()))
            .with(v, Value::Bool(true));
        let seq = StateSequence::singleton(s);
        let phi = Formula::sees_var(a, v);
        assert_eq!(complete_eval(&model, &sig, &seq, &phi, DEFAULT_CEILING), Ok(true));
    }

    #[test]
    fn contradiction_never_holds() {
        let mut b = Signature::builder();
        let a = b.agent("a").unwrap();
        let n = b.int_var("n", 0, 2).unwrap();
        let sig = b.build();
        let model = GuardedModel::builder("m", &sig).build().unwrap();
        let eq = |c| Formula::atom(Relation::Eq, n, Term::Const(Value::Int(c)));
        let phi = Formula::and(eq(1), eq(2));
        let space = CompletionSpace::new(&sig, 2, DEFAULT_CEILING).unwrap();
        assert_eq!(space.size(), 9);
        assert!(space.all(|seq| !complete_eval(&model, &sig, seq, &phi, DEFAULT_CEILING).unwrap()));
        let _ = a;
    }

    #[test]
    fn ceiling_refuses_large_spaces() {
        let mut b = Signature::builder();
        b.int_var("n", 0, 99).unwrap();
        let sig = b.build();
        assert!(matches!(
            CompletionSpace::new(&sig, 4, DEFAULT_CEILING),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn peek_and_return_gives_belief() {
        // a peeks (n visible), returns, and keeps believing n = 2.
        let mut b = Signature::builder();
        let a = b.agent("a").unwrap();
        let p = b.bool_var("peeking").unwrap();
        let n = b.int_var("n", 1, 2).unwrap();
        let sig = b.build();
        let mut m = GuardedModel::builder("m", &sig);
        m.public(p)
            .set(a, n, Visibility::When(vec![vec![(p, Value::Bool(true))]]));
        let model = m.build().unwrap();
        let st = |peek: bool| {
            State::empty(sig.num_vars())
                .with(sig.agent_var(a), Value::Sym(sig.lookup_symbol("a").unwrap()))
                .with(p, Value::Bool(peek))
                .with(n, Value::Int(2))
        };
        let seq = StateSequence::new(vec![st(false), st(true), st(false)]).unwrap();
        let phi = Formula::believes(a, Formula::atom(Relation::Eq, n, Term::Const(Value::Int(2))));
        let space = CompletionSpace::new(&sig, seq.len(), DEFAULT_CEILING).unwrap();
        assert!(space.size() <= 64);
        assert_eq!(complete_eval(&model, &sig, &seq, &phi, DEFAULT_CEILING), Ok(true));
    }
}
