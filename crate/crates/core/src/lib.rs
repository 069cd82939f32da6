//! Belief evaluation over state sequences under partial observation, and a
//! breadth-first epistemic planner built on it.
//!
//! Agents observe a subset of variables at each timestamp and fill the gaps
//! with the last value they saw. Formulae mix seeing, knowledge and belief
//! for single agents and groups, including distributed and common belief.

pub mod bench;
pub mod domains;
pub mod error;
pub mod formula;
pub mod observation;
pub mod oracle;
pub mod parser;
pub mod perspective;
pub mod planner;
pub mod semantics;
pub mod signature;
pub mod state;
pub mod ternary;

pub use error::{FormulaError, ModelError, OracleError, ParseError, ParseErrorKind, PlanError, SequenceError};
pub use formula::{Atom, Formula, Group, GroupMode, Relation, Term};
pub use observation::{GuardedModel, ObservationModel, Visibility};
pub use planner::{brfs, Action, Domain, Goal, PlanResult, Planner, Problem, SearchLimits, SearchOutcome, SearchStats};
pub use semantics::{eval, EvalStats, Evaluator};
pub use signature::{AgentId, Signature, Value, VarId};
pub use state::{State, StateSequence};
pub use ternary::Ternary;
