//! Agents, variables, value domains and interned symbols.

use std::collections::HashMap;
use std::fmt;

use crate::error::SignatureError;

/// Index of a variable in a [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u16);

impl VarId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of an agent in a [`Signature`]. Every agent also owns a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub u16);

impl AgentId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interned enumeration constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

/// A value assigned to a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Sym(SymbolId),
}

/// The type of a variable, used to check relations and effects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueType {
    Int,
    Bool,
    Sym,
}

impl fmt::Display for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueType::Int => f.write_str("int"),
            ValueType::Bool => f.write_str("bool"),
            ValueType::Sym => f.write_str("enum"),
        }
    }
}

impl Value {
    pub fn value_type(self) -> ValueType {
        match self {
            Value::Int(_) => ValueType::Int,
            Value::Bool(_) => ValueType::Bool,
            Value::Sym(_) => ValueType::Sym,
        }
    }
}

/// Finite value domain of a variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// Inclusive integer range.
    Int { min: i64, max: i64 },
    Bool,
    Enum(Vec<SymbolId>),
}

impl Domain {
    pub fn value_type(&self) -> ValueType {
        match self {
            Domain::Int { .. } => ValueType::Int,
            Domain::Bool => ValueType::Bool,
            Domain::Enum(_) => ValueType::Sym,
        }
    }

    pub fn contains(&self, value: Value) -> bool {
        match (self, value) {
            (Domain::Int { min, max }, Value::Int(x)) => *min <= x && x <= *max,
            (Domain::Bool, Value::Bool(_)) => true,
            (Domain::Enum(syms), Value::Sym(s)) => syms.contains(&s),
            _ => false,
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            Domain::Int { min, max } => (max - min + 1) as u64,
            Domain::Bool => 2,
            Domain::Enum(syms) => syms.len() as u64,
        }
    }

    /// All members in ascending order.
    pub fn values(&self) -> Vec<Value> {
        match self {
            Domain::Int { min, max } => (*min..=*max).map(Value::Int).collect(),
            Domain::Bool => vec![Value::Bool(false), Value::Bool(true)],
            Domain::Enum(syms) => syms.iter().copied().map(Value::Sym).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub domain: Domain,
    /// Set when the variable is the identifier of an agent.
    pub agent: Option<AgentId>,
}

/// Agents, variables and their domains.
///
/// Agent identifiers double as variables: each agent gets a variable of the
/// same name whose domain is the singleton enumeration of its own name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    agents: Vec<VarId>,
    vars: Vec<VarDecl>,
    symbols: Vec<String>,
    var_index: HashMap<String, VarId>,
    symbol_index: HashMap<String, SymbolId>,
}

impl Signature {
    pub fn builder() -> SignatureBuilder {
        SignatureBuilder::default()
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.vars.len()).map(|i| VarId(i as u16))
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentId> + '_ {
        (0..self.agents.len()).map(|i| AgentId(i as u16))
    }

    pub fn var(&self, id: VarId) -> &VarDecl {
        &self.vars[id.index()]
    }

    pub fn var_name(&self, id: VarId) -> &str {
        &self.vars[id.index()].name
    }

    pub fn domain(&self, id: VarId) -> &Domain {
        &self.vars[id.index()].domain
    }

    pub fn lookup_var(&self, name: &str) -> Option<VarId> {
        self.var_index.get(name).copied()
    }

    pub fn lookup_agent(&self, name: &str) -> Option<AgentId> {
        self.lookup_var(name).and_then(|v| self.var(v).agent)
    }

    pub fn agent_var(&self, agent: AgentId) -> VarId {
        self.agents[agent.index()]
    }

    pub fn agent_name(&self, agent: AgentId) -> &str {
        self.var_name(self.agent_var(agent))
    }

    pub fn is_agent(&self, agent: AgentId) -> bool {
        agent.index() < self.agents.len()
    }

    pub fn is_var(&self, var: VarId) -> bool {
        var.index() < self.vars.len()
    }

    pub fn lookup_symbol(&self, name: &str) -> Option<SymbolId> {
        self.symbol_index.get(name).copied()
    }

    pub fn symbol_name(&self, sym: SymbolId) -> &str {
        &self.symbols[sym.0 as usize]
    }

    /// Renders a value the way the text formats spell it.
    pub fn fmt_value(&self, value: Value) -> String {
        match value {
            Value::Int(x) => x.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Sym(s) => self.symbol_name(s).to_string(),
        }
    }

    /// Parses a value literal for `var`, checking domain membership.
    pub fn parse_value(&self, var: VarId, text: &str) -> Option<Value> {
        let value = match self.domain(var) {
            Domain::Int { .. } => Value::Int(text.parse().ok()?),
            Domain::Bool => Value::Bool(text.parse().ok()?),
            Domain::Enum(_) => Value::Sym(self.lookup_symbol(text)?),
        };
        self.domain(var).contains(value).then_some(value)
    }

    /// Product of all domain sizes, saturating at `u64::MAX`.
    pub fn global_state_count(&self) -> u64 {
        self.vars
            .iter()
            .fold(1u64, |acc, v| acc.saturating_mul(v.domain.size()))
    }
}

/// Incremental construction of a [`Signature`].
#[derive(Debug, Default)]
pub struct SignatureBuilder {
    sig: Signature,
}

impl SignatureBuilder {
    fn intern(&mut self, name: &str) -> SymbolId {
        if let Some(id) = self.sig.symbol_index.get(name) {
            return *id;
        }
        let id = SymbolId(self.sig.symbols.len() as u32);
        self.sig.symbols.push(name.to_string());
        self.sig.symbol_index.insert(name.to_string(), id);
        id
    }

    fn push_var(
        &mut self,
        name: &str,
        domain: Domain,
        agent: Option<AgentId>,
    ) -> Result<VarId, SignatureError> {
        if self.sig.var_index.contains_key(name) {
            return Err(SignatureError::DuplicateVariable(name.to_string()));
        }
        if domain.size() == 0 {
            return Err(SignatureError::EmptyDomain(name.to_string()));
        }
        if self.sig.vars.len() >= u16::MAX as usize {
            return Err(SignatureError::TooManyVariables);
        }
        let id = VarId(self.sig.vars.len() as u16);
        self.sig.vars.push(VarDecl {
            name: name.to_string(),
            domain,
            agent,
        });
        self.sig.var_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn agent(&mut self, name: &str) -> Result<AgentId, SignatureError> {
        let agent = AgentId(self.sig.agents.len() as u16);
        let sym = self.intern(name);
        let var = self.push_var(name, Domain::Enum(vec![sym]), Some(agent))?;
        self.sig.agents.push(var);
        Ok(agent)
    }

    pub fn int_var(&mut self, name: &str, min: i64, max: i64) -> Result<VarId, SignatureError> {
        if min > max {
            return Err(SignatureError::EmptyDomain(name.to_string()));
        }
        self.push_var(name, Domain::Int { min, max }, None)
    }

    pub fn bool_var(&mut self, name: &str) -> Result<VarId, SignatureError> {
        self.push_var(name, Domain::Bool, None)
    }

    pub fn enum_var<S: AsRef<str>>(
        &mut self,
        name: &str,
        members: &[S],
    ) -> Result<VarId, SignatureError> {
        let mut syms = Vec::with_capacity(members.len());
        for m in members {
            let sym = self.intern(m.as_ref());
            if syms.contains(&sym) {
                return Err(SignatureError::DuplicateMember {
                    var: name.to_string(),
                    member: m.as_ref().to_string(),
                });
            }
            syms.push(sym);
        }
        self.push_var(name, Domain::Enum(syms), None)
    }

    pub fn build(self) -> Signature {
        self.sig
    }
}
