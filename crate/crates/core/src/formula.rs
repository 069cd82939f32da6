//! The epistemic language: atoms, connectives, seeing, knowledge and belief,
//! individual and group forms.

use std::fmt;

use crate::error::FormulaError;
use crate::signature::{AgentId, Signature, Value, ValueType, VarId};
use crate::state::State;
use crate::ternary::Ternary;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Eq,
        Relation::Ne,
        Relation::Lt,
        Relation::Le,
        Relation::Gt,
        Relation::Ge,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Relation> {
        Relation::ALL.into_iter().find(|r| r.symbol() == s)
    }

    /// The relation holding exactly when `self` fails.
    pub fn complement(self) -> Relation {
        match self {
            Relation::Eq => Relation::Ne,
            Relation::Ne => Relation::Eq,
            Relation::Lt => Relation::Ge,
            Relation::Le => Relation::Gt,
            Relation::Gt => Relation::Le,
            Relation::Ge => Relation::Lt,
        }
    }

    pub fn is_ordering(self) -> bool {
        !matches!(self, Relation::Eq | Relation::Ne)
    }

    fn holds(self, lhs: Value, rhs: Value) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

/// Right-hand operand of an atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Const(Value),
    Var(VarId),
}

/// `lhs rel rhs` over a variable and a constant or second variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub rel: Relation,
    pub lhs: VarId,
    pub rhs: Term,
}

impl Atom {
    pub fn new(rel: Relation, lhs: VarId, rhs: Term) -> Self {
        Atom { rel, lhs, rhs }
    }

    pub fn with_const(rel: Relation, lhs: VarId, value: Value) -> Self {
        Atom::new(rel, lhs, Term::Const(value))
    }

    /// Truth of the atom in `state`: unknown when an operand is unassigned.
    pub fn interpret(&self, state: &State) -> Ternary {
        let Some(lhs) = state.get(self.lhs) else {
            return Ternary::Unknown;
        };
        let rhs = match self.rhs {
            Term::Const(v) => v,
            Term::Var(v) => match state.get(v) {
                Some(v) => v,
                None => return Ternary::Unknown,
            },
        };
        Ternary::from(self.rel.holds(lhs, rhs))
    }

    fn validate(&self, sig: &Signature) -> Result<(), FormulaError> {
        check_var(sig, self.lhs)?;
        let lhs_ty = sig.domain(self.lhs).value_type();
        let rhs_ty = match self.rhs {
            Term::Const(v) => v.value_type(),
            Term::Var(v) => {
                check_var(sig, v)?;
                sig.domain(v).value_type()
            }
        };
        if lhs_ty != rhs_ty {
            return Err(FormulaError::TypeMismatch {
                var: sig.var_name(self.lhs).to_string(),
                expected: lhs_ty,
                found: rhs_ty,
            });
        }
        if self.rel.is_ordering() && lhs_ty != ValueType::Int {
            return Err(FormulaError::OrderingOnNonInteger {
                relation: self.rel.symbol(),
                var: sig.var_name(self.lhs).to_string(),
            });
        }
        Ok(())
    }
}

/// Evaluates an atom on a single state.
pub fn interpret_atom(state: &State, atom: &Atom) -> Ternary {
    atom.interpret(state)
}

/// Which group operator: everyone (E), distributed (D) or common (C).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupMode {
    Uniform,
    Distributed,
    Common,
}

impl GroupMode {
    pub const ALL: [GroupMode; 3] = [GroupMode::Uniform, GroupMode::Distributed, GroupMode::Common];

    fn prefix(self) -> char {
        match self {
            GroupMode::Uniform => 'E',
            GroupMode::Distributed => 'D',
            GroupMode::Common => 'C',
        }
    }
}

/// A non-empty set of agents, kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group(Vec<AgentId>);

impl Group {
    pub fn new(mut members: Vec<AgentId>) -> Result<Self, FormulaError> {
        members.sort();
        members.dedup();
        if members.is_empty() {
            return Err(FormulaError::EmptyGroup);
        }
        Ok(Group(members))
    }

    pub fn members(&self) -> &[AgentId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Operand of a seeing operator: a variable or a formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Seeable {
    Var(VarId),
    Formula(Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Sees(AgentId, Seeable),
    Knows(AgentId, Box<Formula>),
    Believes(AgentId, Box<Formula>),
    GroupSees(GroupMode, Group, Seeable),
    GroupKnows(GroupMode, Group, Box<Formula>),
    GroupBelieves(GroupMode, Group, Box<Formula>),
}

impl Formula {
    pub fn atom(rel: Relation, lhs: VarId, rhs: Term) -> Formula {
        Formula::Atom(Atom::new(rel, lhs, rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction of at least one formula.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn sees_var(agent: AgentId, var: VarId) -> Formula {
        Formula::Sees(agent, Seeable::Var(var))
    }

    pub fn sees(agent: AgentId, f: Formula) -> Formula {
        Formula::Sees(agent, Seeable::Formula(Box::new(f)))
    }

    pub fn knows(agent: AgentId, f: Formula) -> Formula {
        Formula::Knows(agent, Box::new(f))
    }

    pub fn believes(agent: AgentId, f: Formula) -> Formula {
        Formula::Believes(agent, Box::new(f))
    }

    pub fn group_believes(mode: GroupMode, group: Group, f: Formula) -> Formula {
        Formula::GroupBelieves(mode, group, Box::new(f))
    }

    pub fn group_knows(mode: GroupMode, group: Group, f: Formula) -> Formula {
        Formula::GroupKnows(mode, group, Box::new(f))
    }

    pub fn group_sees(mode: GroupMode, group: Group, f: Formula) -> Formula {
        Formula::GroupSees(mode, group, Seeable::Formula(Box::new(f)))
    }

    pub fn group_sees_var(mode: GroupMode, group: Group, var: VarId) -> Formula {
        Formula::GroupSees(mode, group, Seeable::Var(var))
    }

    /// True when the formula contains an individual or group belief operator.
    pub fn has_belief(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Not(f) => f.has_belief(),
            Formula::And(a, b) => a.has_belief() || b.has_belief(),
            Formula::Sees(_, s) | Formula::GroupSees(_, _, s) => match s {
                Seeable::Var(_) => false,
                Seeable::Formula(f) => f.has_belief(),
            },
            Formula::Knows(_, f) | Formula::GroupKnows(_, _, f) => f.has_belief(),
            Formula::Believes(..) | Formula::GroupBelieves(..) => true,
        }
    }

    /// Nesting depth of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Sees(_, s) | Formula::GroupSees(_, _, s) => {
                1 + match s {
                    Seeable::Var(_) => 0,
                    Seeable::Formula(f) => f.modal_depth(),
                }
            }
            Formula::Knows(_, f)
            | Formula::GroupKnows(_, _, f)
            | Formula::Believes(_, f)
            | Formula::GroupBelieves(_, _, f) => 1 + f.modal_depth(),
        }
    }

    /// Checks names, groups, atom typing and the rule that no belief operator
    /// occurs beneath a seeing or knowledge operator.
    pub fn validate(&self, sig: &Signature) -> Result<(), FormulaError> {
        match self {
            Formula::Atom(a) => a.validate(sig),
            Formula::Not(f) => f.validate(sig),
            Formula::And(a, b) => {
                a.validate(sig)?;
                b.validate(sig)
            }
            Formula::Sees(agent, s) => {
                check_agent(sig, *agent)?;
                validate_seeable(sig, s)
            }
            Formula::GroupSees(_, g, s) => {
                check_group(sig, g)?;
                validate_seeable(sig, s)
            }
            Formula::Knows(agent, f) => {
                check_agent(sig, *agent)?;
                no_belief_below(f)?;
                f.validate(sig)
            }
            Formula::GroupKnows(_, g, f) => {
                check_group(sig, g)?;
                no_belief_below(f)?;
                f.validate(sig)
            }
            Formula::Believes(agent, f) => {
                check_agent(sig, *agent)?;
                f.validate(sig)
            }
            Formula::GroupBelieves(_, g, f) => {
                check_group(sig, g)?;
                f.validate(sig)
            }
        }
    }

    /// Prefix s-expression rendering, the same syntax the parser reads.
    pub fn display<'a>(&'a self, sig: &'a Signature) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, sig }
    }
}

fn validate_seeable(sig: &Signature, s: &Seeable) -> Result<(), FormulaError> {
    match s {
        Seeable::Var(v) => check_var(sig, *v),
        Seeable::Formula(f) => {
            no_belief_below(f)?;
            f.validate(sig)
        }
    }
}

fn no_belief_below(f: &Formula) -> Result<(), FormulaError> {
    if f.has_belief() {
        Err(FormulaError::BeliefUnderKnowledge)
    } else {
        Ok(())
    }
}

fn check_var(sig: &Signature, var: VarId) -> Result<(), FormulaError> {
    if sig.is_var(var) {
        Ok(())
    } else {
        Err(FormulaError::UnknownVariable(var.index()))
    }
}

fn check_agent(sig: &Signature, agent: AgentId) -> Result<(), FormulaError> {
    if sig.is_agent(agent) {
        Ok(())
    } else {
        Err(FormulaError::UnknownAgent(agent.index()))
    }
}

fn check_group(sig: &Signature, group: &Group) -> Result<(), FormulaError> {
    if group.is_empty() {
        return Err(FormulaError::EmptyGroup);
    }
    group.members().iter().try_for_each(|a| check_agent(sig, *a))
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    sig: &'a Signature,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, formula: &Formula) -> fmt::Result {
        let sig = self.sig;
        match formula {
            Formula::Atom(a) => {
                write!(f, "({} {} ", a.rel.symbol(), sig.var_name(a.lhs))?;
                match a.rhs {
                    Term::Const(v) => f.write_str(&sig.fmt_value(v))?,
                    Term::Var(v) => f.write_str(sig.var_name(v))?,
                }
                f.write_str(")")
            }
            Formula::Not(inner) => {
                f.write_str("(not ")?;
                self.write(f, inner)?;
                f.write_str(")")
            }
            Formula::And(a, b) => {
                f.write_str("(and ")?;
                self.write(f, a)?;
                f.write_str(" ")?;
                self.write(f, b)?;
                f.write_str(")")
            }
            Formula::Sees(agent, s) => {
                write!(f, "(S {} ", sig.agent_name(*agent))?;
                self.write_seeable(f, s)?;
                f.write_str(")")
            }
            Formula::Knows(agent, inner) => {
                write!(f, "(K {} ", sig.agent_name(*agent))?;
                self.write(f, inner)?;
                f.write_str(")")
            }
            Formula::Believes(agent, inner) => {
                write!(f, "(B {} ", sig.agent_name(*agent))?;
                self.write(f, inner)?;
                f.write_str(")")
            }
            Formula::GroupSees(mode, g, s) => {
                write!(f, "({}S ", mode.prefix())?;
                self.write_group(f, g)?;
                f.write_str(" ")?;
                self.write_seeable(f, s)?;
                f.write_str(")")
            }
            Formula::GroupKnows(mode, g, inner) => {
                write!(f, "({}K ", mode.prefix())?;
                self.write_group(f, g)?;
                f.write_str(" ")?;
                self.write(f, inner)?;
                f.write_str(")")
            }
            Formula::GroupBelieves(mode, g, inner) => {
                write!(f, "({}B ", mode.prefix())?;
                self.write_group(f, g)?;
                f.write_str(" ")?;
                self.write(f, inner)?;
                f.write_str(")")
            }
        }
    }

    fn write_seeable(&self, f: &mut fmt::Formatter<'_>, s: &Seeable) -> fmt::Result {
        match s {
            Seeable::Var(v) => f.write_str(self.sig.var_name(*v)),
            Seeable::Formula(inner) => self.write(f, inner),
        }
    }

    fn write_group(&self, f: &mut fmt::Formatter<'_>, g: &Group) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in g.members().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.sig.agent_name(*a))?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula)
    }
}
