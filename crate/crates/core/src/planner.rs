//! Grounded actions and breadth-first search over state sequences.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::PlanError;
use crate::formula::Formula;
use crate::observation::ObservationModel;
use crate::semantics::{EvalStats, Evaluator};
use crate::signature::{Signature, Value, VarId};
use crate::state::{State, StateSequence};
use crate::ternary::Ternary;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EffectExpr {
    Const(Value),
    Copy(VarId),
    /// Integer increment; negative for decrement.
    Add(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Effect {
    pub var: VarId,
    pub expr: EffectExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub name: String,
    pub precondition: Option<Formula>,
    pub effects: Vec<Effect>,
}

impl Action {
    /// The successor of `state`, or `None` when an effect leaves its domain.
    /// All effects read the original state.
    pub fn successor(&self, sig: &Signature, state: &State) -> Option<State> {
        let mut next = state.clone();
        for e in &self.effects {
            let value = match e.expr {
                EffectExpr::Const(c) => c,
                EffectExpr::Copy(src) => state.get(src)?,
                EffectExpr::Add(k) => match state.get(e.var)? {
                    Value::Int(x) => Value::Int(x.checked_add(k)?),
                    _ => return None,
                },
            };
            if !sig.domain(e.var).contains(value) {
                return None;
            }
            next.set(e.var, value);
        }
        Some(next)
    }
}

/// A planning domain: signature, observation model and ordered actions.
#[derive(Clone, Debug)]
pub struct Domain {
    pub name: String,
    pub sig: Signature,
    pub model: Arc<dyn ObservationModel>,
    pub actions: Vec<Action>,
}

impl Domain {
    pub fn action(&self, name: &str) -> Option<&Action> {
        self.actions.iter().find(|a| a.name == name)
    }

    /// Checks effect typing and precondition validity.
    pub fn validate(&self) -> Result<(), PlanError> {
        for a in &self.actions {
            if let Some(pre) = &a.precondition {
                pre.validate(&self.sig)?;
            }
            for e in &a.effects {
                let ty = self.sig.domain(e.var).value_type();
                let ok = match e.expr {
                    EffectExpr::Const(c) => c.value_type() == ty,
                    EffectExpr::Copy(src) => self.sig.domain(src).value_type() == ty,
                    EffectExpr::Add(_) => ty == crate::signature::ValueType::Int,
                };
                if !ok {
                    return Err(PlanError::EffectType {
                        var: self.sig.var_name(e.var).to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub formula: Formula,
    pub target: Ternary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub name: String,
    pub init: State,
    pub goals: Vec<Goal>,
    pub max_depth: Option<usize>,
}

impl Problem {
    pub fn validate(&self, sig: &Signature) -> Result<(), PlanError> {
        if let Some(v) = sig.vars().find(|v| !self.init.contains(*v)) {
            return Err(PlanError::PartialInitialState(sig.var_name(v).to_string()));
        }
        for g in &self.goals {
            g.formula.validate(sig)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub expanded: u64,
    pub generated: u64,
    #[serde(flatten)]
    pub eval: EvalStats,
    #[serde(skip)]
    pub total_time: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Solved { plan: Vec<String>, sequence: StateSequence },
    /// No plan within the depth limit.
    Unsolvable,
    /// The node budget ran out first.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanResult {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

impl PlanResult {
    pub fn plan(&self) -> Option<&[String]> {
        match &self.outcome {
            SearchOutcome::Solved { plan, .. } => Some(plan),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_depth: usize,
    /// Stop after generating this many nodes.
    pub max_generated: Option<u64>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_depth: 12,
            max_generated: None,
        }
    }
}

struct Node {
    parent: Option<u32>,
    action: u16,
    depth: u32,
    state: State,
}

/// Evaluates preconditions and goals over full histories.
pub struct Planner<'d> {
    domain: &'d Domain,
    eval: Evaluator<'d>,
}

impl<'d> Planner<'d> {
    pub fn new(domain: &'d Domain) -> Self {
        Planner {
            domain,
            eval: Evaluator::new(domain.model.as_ref(), &domain.sig),
        }
    }

    /// True when the precondition evaluates to exactly 1.
    pub fn applicable(&mut self, action: &Action, seq: &StateSequence) -> bool {
        match &action.precondition {
            None => true,
            Some(pre) => self.eval.eval(seq, pre) == Ternary::True,
        }
    }

    /// `seq` extended by the action's successor state, if applicable.
    pub fn apply(&mut self, action: &Action, seq: &StateSequence) -> Option<StateSequence> {
        let next = action.successor(&self.domain.sig, seq.last())?;
        self.applicable(action, seq).then(|| seq.extended(next))
    }

    pub fn goals_hold(&mut self, goals: &[Goal], seq: &StateSequence) -> bool {
        goals
            .iter()
            .all(|g| self.eval.eval(seq, &g.formula) == g.target)
    }

    fn sequence(nodes: &[Node], mut id: u32) -> StateSequence {
        let mut states = Vec::new();
        loop {
            let n = &nodes[id as usize];
            states.push(n.state.clone());
            match n.parent {
                Some(p) => id = p,
                None => break,
            }
        }
        states.reverse();
        StateSequence::new(states).expect("non-empty")
    }

    fn plan(&self, nodes: &[Node], mut id: u32) -> Vec<String> {
        let mut plan = Vec::new();
        while let Some(p) = nodes[id as usize].parent {
            plan.push(self.domain.actions[nodes[id as usize].action as usize].name.clone());
            id = p;
        }
        plan.reverse();
        plan
    }

    /// Breadth-first search with goal testing at generation. Nodes are
    /// duplicates when their whole state sequences coincide.
    pub fn search(&mut self, problem: &Problem, limits: SearchLimits) -> PlanResult {
        let start = Instant::now();
        let _ = self.eval.take_stats();
        let mut stats = SearchStats::default();
        let finish = |mut stats: SearchStats, eval: EvalStats, outcome| {
            stats.eval = eval;
            stats.total_time = start.elapsed();
            PlanResult { outcome, stats }
        };

        let root = StateSequence::singleton(problem.init.clone());
        if self.goals_hold(&problem.goals, &root) {
            let eval = self.eval.take_stats();
            return finish(
                stats,
                eval,
                SearchOutcome::Solved {
                    plan: Vec::new(),
                    sequence: root,
                },
            );
        }

        let mut nodes = vec![Node {
            parent: None,
            action: 0,
            depth: 0,
            state: problem.init.clone(),
        }];
        let mut seen: HashSet<(u32, State)> = HashSet::new();
        let mut queue = VecDeque::from([0u32]);
        while let Some(id) = queue.pop_front() {
            if nodes[id as usize].depth as usize >= limits.max_depth {
                continue;
            }
            stats.expanded += 1;
            let seq = Self::sequence(&nodes, id);
            for (k, action) in self.domain.actions.iter().enumerate() {
                let Some(next) = action.successor(&self.domain.sig, seq.last()) else {
                    continue;
                };
                if seen.contains(&(id, next.clone())) || !self.applicable(action, &seq) {
                    continue;
                }
                seen.insert((id, next.clone()));
                stats.generated += 1;
                let child = seq.extended(next.clone());
                let child_id = nodes.len() as u32;
                nodes.push(Node {
                    parent: Some(id),
                    action: k as u16,
                    depth: nodes[id as usize].depth + 1,
                    state: next,
                });
                if self.goals_hold(&problem.goals, &child) {
                    let plan = self.plan(&nodes, child_id);
                    let eval = self.eval.take_stats();
                    return finish(
                        stats,
                        eval,
                        SearchOutcome::Solved {
                            plan,
                            sequence: child,
                        },
                    );
                }
                if limits.max_generated.is_some_and(|m| stats.generated >= m) {
                    let eval = self.eval.take_stats();
                    return finish(stats, eval, SearchOutcome::BudgetExhausted);
                }
                queue.push_back(child_id);
            }
        }
        let eval = self.eval.take_stats();
        finish(stats, eval, SearchOutcome::Unsolvable)
    }
}

/// Runs breadth-first search on `problem`.
pub fn brfs(domain: &Domain, problem: &Problem, limits: SearchLimits) -> PlanResult {
    Planner::new(domain).search(problem, limits)
}
