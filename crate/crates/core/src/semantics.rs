//! Ternary evaluation of formulae over state sequences.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::formula::{Formula, Group, GroupMode, Seeable};
use crate::observation::ObservationModel;
use crate::perspective::{
    common_observation, distributed_perspective, group_observation, PerspectiveCache,
};
use crate::signature::{AgentId, Signature, VarId};
use crate::state::StateSequence;
use crate::ternary::Ternary;

/// Counters accumulated across evaluations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct EvalStats {
    /// Top-level evaluations.
    pub external_calls: u64,
    /// Common belief evaluations and their summed fixed-point iterations.
    pub common_evals: u64,
    pub common_iterations: u64,
    pub common_max: usize,
    #[serde(skip)]
    pub eval_time: Duration,
}

impl EvalStats {
    pub fn common_avg(&self) -> f64 {
        if self.common_evals == 0 {
            0.0
        } else {
            self.common_iterations as f64 / self.common_evals as f64
        }
    }

    /// Mean wall time per external call in milliseconds.
    pub fn avg_call_ms(&self) -> f64 {
        if self.external_calls == 0 {
            0.0
        } else {
            self.eval_time.as_secs_f64() * 1000.0 / self.external_calls as f64
        }
    }

    pub fn merge(&mut self, other: &EvalStats) {
        self.external_calls += other.external_calls;
        self.common_evals += other.common_evals;
        self.common_iterations += other.common_iterations;
        self.common_max = self.common_max.max(other.common_max);
        self.eval_time += other.eval_time;
    }

    fn record_common(&mut self, iterations: usize) {
        self.common_evals += 1;
        self.common_iterations += iterations as u64;
        self.common_max = self.common_max.max(iterations);
    }
}

/// Evaluates validated formulae against one observation model.
///
/// Perspectives computed during a single call to [`eval`](Self::eval) are
/// cached and dropped when it returns.
pub struct Evaluator<'m> {
    model: &'m dyn ObservationModel,
    sig: &'m Signature,
    cache: PerspectiveCache,
    stats: EvalStats,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m dyn ObservationModel, sig: &'m Signature) -> Self {
        Evaluator {
            model,
            sig,
            cache: PerspectiveCache::new(),
            stats: EvalStats::default(),
        }
    }

    pub fn stats(&self) -> &EvalStats {
        &self.stats
    }

    pub fn take_stats(&mut self) -> EvalStats {
        std::mem::take(&mut self.stats)
    }

    /// Top-level evaluation; counted as one external call.
    pub fn eval(&mut self, seq: &StateSequence, phi: &Formula) -> Ternary {
        let start = Instant::now();
        let value = self.t(seq, phi);
        self.cache.clear();
        self.stats.external_calls += 1;
        self.stats.eval_time += start.elapsed();
        value
    }

    fn agent_present(&self, seq: &StateSequence, agent: AgentId) -> bool {
        seq.last().contains(self.sig.agent_var(agent))
    }

    fn t(&mut self, seq: &StateSequence, phi: &Formula) -> Ternary {
        match phi {
            Formula::Atom(atom) => atom.interpret(seq.last()),
            Formula::Not(f) => !self.t(seq, f),
            Formula::And(a, b) => {
                let x = self.t(seq, a);
                if x == Ternary::False {
                    return x;
                }
                x.and(self.t(seq, b))
            }
            Formula::Sees(i, s) => self.sees(seq, *i, s),
            Formula::Knows(i, f) => {
                let x = self.t(seq, f);
                x.and(self.sees_formula(seq, *i, f))
            }
            Formula::Believes(i, f) => {
                let w = self.cache.justified(self.model, *i, seq);
                self.t(&w, f)
            }
            Formula::GroupSees(mode, g, s) => self.group_sees(seq, *mode, g, s),
            Formula::GroupKnows(mode, g, f) => {
                let x = self.t(seq, f);
                let s = Seeable::Formula(f.clone());
                x.and(self.group_sees(seq, *mode, g, &s))
            }
            Formula::GroupBelieves(mode, g, f) => self.group_believes(seq, *mode, g, f),
        }
    }

    fn sees(&mut self, seq: &StateSequence, i: AgentId, s: &Seeable) -> Ternary {
        match s {
            Seeable::Var(v) => self.sees_var(seq, i, *v),
            Seeable::Formula(f) => self.sees_formula(seq, i, f),
        }
    }

    fn sees_var(&self, seq: &StateSequence, i: AgentId, v: VarId) -> Ternary {
        let last = seq.last();
        if !self.agent_present(seq, i) || !last.contains(v) {
            Ternary::Unknown
        } else if !self.model.observe(i, last).contains(v) {
            Ternary::False
        } else {
            Ternary::True
        }
    }

    fn sees_formula(&mut self, seq: &StateSequence, i: AgentId, f: &Formula) -> Ternary {
        if !self.agent_present(seq, i) || self.t(seq, f).is_unknown() {
            return Ternary::Unknown;
        }
        let observed = seq.map(|s| self.model.observe(i, s));
        if self.t(&observed, f).is_unknown() {
            Ternary::False
        } else {
            Ternary::True
        }
    }

    fn group_sees(
        &mut self,
        seq: &StateSequence,
        mode: GroupMode,
        g: &Group,
        s: &Seeable,
    ) -> Ternary {
        if mode == GroupMode::Uniform {
            return g
                .members()
                .iter()
                .map(|&i| self.sees(seq, i, s))
                .min()
                .expect("groups are non-empty");
        }
        let present = g.members().iter().filter(|&&i| self.agent_present(seq, i)).count();
        let guard_fails = match mode {
            GroupMode::Distributed => present == 0,
            _ => present < g.len(),
        };
        let model = self.model;
        let pooled = |st: &crate::state::State| match mode {
            GroupMode::Distributed => group_observation(model, g, st),
            _ => common_observation(model, g, st),
        };
        match s {
            Seeable::Var(v) => {
                let last = seq.last();
                if guard_fails || !last.contains(*v) {
                    Ternary::Unknown
                } else if !pooled(last).contains(*v) {
                    Ternary::False
                } else {
                    Ternary::True
                }
            }
            Seeable::Formula(f) => {
                if guard_fails || self.t(seq, f).is_unknown() {
                    return Ternary::Unknown;
                }
                let observed = seq.map(pooled);
                if self.t(&observed, f).is_unknown() {
                    Ternary::False
                } else {
                    Ternary::True
                }
            }
        }
    }

    fn group_believes(
        &mut self,
        seq: &StateSequence,
        mode: GroupMode,
        g: &Group,
        f: &Formula,
    ) -> Ternary {
        match mode {
            GroupMode::Uniform => {
                let set = self.cache.uniform(self.model, g, seq);
                self.min_over(&set, f)
            }
            GroupMode::Distributed => {
                let w = distributed_perspective(self.model, g, seq);
                self.t(&w, f)
            }
            GroupMode::Common => {
                let seed = BTreeSet::from([seq.clone()]);
                let (set, stats) = self.cache.common(self.model, g, &seed);
                self.stats.record_common(stats.iterations);
                self.min_over(&set, f)
            }
        }
    }

    fn min_over(&mut self, set: &BTreeSet<StateSequence>, f: &Formula) -> Ternary {
        let mut acc = Ternary::True;
        for w in set {
            acc = acc.and(self.t(w, f));
            if acc == Ternary::False {
                break;
            }
        }
        acc
    }
}

/// One-shot evaluation without keeping statistics.
pub fn eval(
    model: &dyn ObservationModel,
    sig: &Signature,
    seq: &StateSequence,
    phi: &Formula,
) -> Ternary {
    Evaluator::new(model, sig).eval(seq, phi)
}
