use std::fmt;

use thiserror::Error;

use crate::signature::ValueType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("variable `{0}` has an empty domain")]
    EmptyDomain(String),
    #[error("too many variables")]
    TooManyVariables,
    #[error("enumeration `{var}` lists `{member}` twice")]
    DuplicateMember { var: String, member: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("state sequences must contain at least one state")]
    Empty,
    #[error("timestamp {index} outside sequence of length {len}")]
    OutOfRange { index: i64, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("unknown variable #{0}")]
    UnknownVariable(usize),
    #[error("unknown agent #{0}")]
    UnknownAgent(usize),
    #[error("agent groups must be non-empty")]
    EmptyGroup,
    #[error("`{var}` has type {expected} but is compared with a {found}")]
    TypeMismatch {
        var: String,
        expected: ValueType,
        found: ValueType,
    },
    #[error("`{relation}` needs an integer operand, `{var}` is not one")]
    OrderingOnNonInteger { relation: &'static str, var: String },
    #[error("a belief operator may not occur under a seeing or knowledge operator")]
    BeliefUnderKnowledge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown observation model `{0}`")]
    UnknownModel(String),
    #[error("model `{model}` needs variable `{var}`")]
    MissingVariable { model: String, var: String },
    #[error("model `{model}`: {reason}")]
    Invalid { model: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("completion space of {size} sequences exceeds the ceiling of {ceiling}")]
    TooLarge { size: u128, ceiling: u128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Reference,
    Grammar,
    Type,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Reference => "reference error",
            ParseErrorKind::Grammar => "grammar error",
            ParseErrorKind::Type => "type error",
        })
    }
}

/// A parse failure located at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            kind,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("initial state must assign every variable; `{0}` is missing")]
    PartialInitialState(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("effect on `{var}` has the wrong type")]
    EffectType { var: String },
}
