//! Observation functions: what each agent sees of a single state.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::ModelError;
use crate::signature::{AgentId, Signature, Value, VarId};
use crate::state::State;

/// A per-agent observation function `O_i`.
///
/// Implementations provide the visibility predicate [`sees`](Self::sees),
/// which may hold for a variable that the state leaves unassigned: an agent
/// looking into an empty box still looks at the box. The observed state is
/// the restriction of the state to the assigned variables that are seen.
///
/// Implementations must be deterministic, and the derived `observe` must
/// satisfy containment, idempotence and monotonicity; [`check_axioms`] tests
/// this on sampled states.
pub trait ObservationModel: Send + Sync {
    fn name(&self) -> &str;

    /// Whether `agent` looks at `var` in `state`.
    fn sees(&self, agent: AgentId, state: &State, var: VarId) -> bool;

    fn observe(&self, agent: AgentId, state: &State) -> State {
        state.restrict(|v| self.sees(agent, state, v))
    }
}

impl fmt::Debug for dyn ObservationModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ObservationModel({})", self.name())
    }
}

/// Visibility rule for one agent and one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Visibility {
    Never,
    Always,
    /// Visible when one of the conjunctions holds. Each literal `x = c` needs
    /// `x` assigned to `c` and itself visible to the same agent.
    When(Vec<Vec<(VarId, Value)>>),
}

/// An observation model given by a table of [`Visibility`] rules.
///
/// Guards must not depend on themselves, directly or through other guards.
#[derive(Clone, Debug)]
pub struct GuardedModel {
    name: String,
    num_vars: usize,
    rules: Vec<Vec<Visibility>>,
}

impl GuardedModel {
    /// Every rule starts as `Never`, except agent variables, which everyone sees.
    pub fn builder(name: &str, sig: &Signature) -> GuardedModelBuilder {
        let rules = sig
            .agents()
            .map(|_| {
                sig.vars()
                    .map(|v| {
                        if sig.var(v).agent.is_some() {
                            Visibility::Always
                        } else {
                            Visibility::Never
                        }
                    })
                    .collect()
            })
            .collect();
        GuardedModelBuilder {
            model: GuardedModel {
                name: name.to_string(),
                num_vars: sig.num_vars(),
                rules,
            },
        }
    }

    pub fn rule(&self, agent: AgentId, var: VarId) -> &Visibility {
        &self.rules[agent.index()][var.index()]
    }

    fn check_acyclic(&self) -> Result<(), ModelError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Fresh,
            Active,
            Done,
        }
        fn visit(
            rules: &[Visibility],
            v: usize,
            marks: &mut [Mark],
        ) -> Result<(), usize> {
            match marks[v] {
                Mark::Done => return Ok(()),
                Mark::Active => return Err(v),
                Mark::Fresh => {}
            }
            marks[v] = Mark::Active;
            if let Visibility::When(dnf) = &rules[v] {
                for (g, _) in dnf.iter().flatten() {
                    visit(rules, g.index(), marks)?;
                }
            }
            marks[v] = Mark::Done;
            Ok(())
        }
        for (a, rules) in self.rules.iter().enumerate() {
            let mut marks = vec![Mark::Fresh; self.num_vars];
            for v in 0..self.num_vars {
                if let Err(at) = visit(rules, v, &mut marks) {
                    return Err(ModelError::Invalid {
                        model: self.name.clone(),
                        reason: format!("visibility guards of agent #{a} form a cycle through variable #{at}"),
                    });
                }
            }
        }
        Ok(())
    }
}

impl ObservationModel for GuardedModel {
    fn name(&self) -> &str {
        &self.name
    }

    fn sees(&self, agent: AgentId, state: &State, var: VarId) -> bool {
        match &self.rules[agent.index()][var.index()] {
            Visibility::Never => false,
            Visibility::Always => true,
            Visibility::When(dnf) => dnf.iter().any(|conj| {
                conj.iter()
                    .all(|(g, c)| state.get(*g) == Some(*c) && self.sees(agent, state, *g))
            }),
        }
    }
}

pub struct GuardedModelBuilder {
    model: GuardedModel,
}

impl GuardedModelBuilder {
    pub fn set(&mut self, agent: AgentId, var: VarId, rule: Visibility) -> &mut Self {
        self.model.rules[agent.index()][var.index()] = rule;
        self
    }

    /// Makes `var` visible to every agent.
    pub fn public(&mut self, var: VarId) -> &mut Self {
        for rules in &mut self.model.rules {
            rules[var.index()] = Visibility::Always;
        }
        self
    }

    pub fn build(self) -> Result<GuardedModel, ModelError> {
        self.model.check_acyclic()?;
        Ok(self.model)
    }
}

/// Constructs a named model for a signature.
pub type ModelConstructor = fn(&Signature) -> Result<Arc<dyn ObservationModel>, ModelError>;

/// Names of the built-in observation models.
pub fn registered_models() -> &'static [&'static str] {
    &["number", "grapevine", "bbl"]
}

/// Looks up a built-in observation model by name and binds it to `sig`.
pub fn build_model(name: &str, sig: &Signature) -> Result<Arc<dyn ObservationModel>, ModelError> {
    let ctor: ModelConstructor = match name {
        "number" => crate::domains::number::model,
        "grapevine" => crate::domains::grapevine::model,
        "bbl" => crate::domains::bbl::model,
        other => return Err(ModelError::UnknownModel(other.to_string())),
    };
    ctor(sig)
}

/// A failed observation axiom, with the offending states rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    NotContained { agent: String, state: String },
    NotIdempotent { agent: String, state: String },
    NotMonotone { agent: String, smaller: String, larger: String },
    NotDeterministic { agent: String, state: String },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NotContained { agent, state } => {
                write!(f, "O_{agent}({state}) is not contained in the state")
            }
            AxiomViolation::NotIdempotent { agent, state } => {
                write!(f, "O_{agent} is not idempotent on {state}")
            }
            AxiomViolation::NotMonotone {
                agent,
                smaller,
                larger,
            } => write!(f, "O_{agent} is not monotone on {smaller} and {larger}"),
            AxiomViolation::NotDeterministic { agent, state } => {
                write!(f, "O_{agent} gives two answers on {state}")
            }
        }
    }
}

/// Draws a random partial state: each variable is assigned with probability `density`.
pub fn random_state(sig: &Signature, rng: &mut impl Rng, density: f64) -> State {
    let mut s = State::empty(sig.num_vars());
    for v in sig.vars() {
        if rng.gen_bool(density) {
            let values = sig.domain(v).values();
            s.set(v, values[rng.gen_range(0..values.len())]);
        }
    }
    s
}

/// Checks containment, idempotence, monotonicity and determinism of every
/// agent's observation on `samples` random state pairs `s ⊆ s'`.
pub fn check_axioms(
    model: &dyn ObservationModel,
    sig: &Signature,
    rng: &mut impl Rng,
    samples: usize,
) -> Result<(), AxiomViolation> {
    for _ in 0..samples {
        let larger = random_state(sig, rng, 0.8);
        let smaller = larger.restrict(|_| rng.gen_bool(0.6));
        for agent in sig.agents() {
            let name = || sig.agent_name(agent).to_string();
            for s in [&smaller, &larger] {
                let o = model.observe(agent, s);
                if !o.is_subset(s) {
                    return Err(AxiomViolation::NotContained {
                        agent: name(),
                        state: s.display(sig).to_string(),
                    });
                }
                if model.observe(agent, &o) != o {
                    return Err(AxiomViolation::NotIdempotent {
                        agent: name(),
                        state: s.display(sig).to_string(),
                    });
                }
                if model.observe(agent, s) != o {
                    return Err(AxiomViolation::NotDeterministic {
                        agent: name(),
                        state: s.display(sig).to_string(),
                    });
                }
            }
            if !model
                .observe(agent, &smaller)
                .is_subset(&model.observe(agent, &larger))
            {
                return Err(AxiomViolation::NotMonotone {
                    agent: name(),
                    smaller: smaller.display(sig).to_string(),
                    larger: larger.display(sig).to_string(),
                });
            }
        }
    }
    Ok(())
}
