use thiserror::Error;

use crate::error::{ParseError, ParseErrorKind};
use crate::planner::{Domain, Planner};
use crate::state::{State, StateSequence};

use super::{parse_assignments, single_name, with_agents, Cursor};

/// A recorded run: an initial state and actions, or explicit states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub name: String,
    pub body: TraceBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceBody {
    Actions { init: State, actions: Vec<String> },
    States(Vec<State>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {step}: `{action}` is not applicable")]
    NotApplicable { step: usize, action: String },
}

impl Trace {
    /// The state sequence the trace describes. Actions must be applicable.
    pub fn sequence(&self, domain: &Domain) -> Result<StateSequence, ReplayError> {
        match &self.body {
            TraceBody::States(states) => Ok(StateSequence::new(states.clone()).expect("parser ensures a state")),
            TraceBody::Actions { init, actions } => {
                let mut planner = Planner::new(domain);
                let mut seq = StateSequence::singleton(init.clone());
                for (k, name) in actions.iter().enumerate() {
                    let action = domain.action(name).expect("parser checks action names");
                    seq = planner.apply(action, &seq).ok_or_else(|| ReplayError::NotApplicable {
                        step: k + 1,
                        action: name.clone(),
                    })?;
                }
                Ok(seq)
            }
        }
    }
}

/// Parses a trace file against its domain.
pub fn parse_trace(text: &str, domain: &Domain) -> Result<Trace, ParseError> {
    let sig = &domain.sig;
    let mut cur = Cursor::new(text);
    let Some(first) = cur.next_decl() else {
        return Err(cur.error(0, ParseErrorKind::Syntax, "expected `trace NAME`"));
    };
    if first.keyword.text != "trace" {
        return Err(cur.error(first.keyword.offset, ParseErrorKind::Syntax, "expected `trace NAME`"));
    }
    let name = single_name(&cur, &first)?.text.to_string();
    let mut init: Option<State> = None;
    let mut actions = Vec::new();
    let mut states = Vec::new();
    let mixed = |cur: &Cursor<'_>, at| {
        cur.error(at, ParseErrorKind::Syntax, "a trace lists either `init`/`do` lines or `state` lines")
    };

    while let Some(decl) = cur.next_decl() {
        match decl.keyword.text {
            "domain" => {
                let d = single_name(&cur, &decl)?;
                if d.text != domain.name {
                    return Err(cur.error(
                        d.offset,
                        ParseErrorKind::Reference,
                        format!("trace is for domain `{}`, not `{}`", d.text, domain.name),
                    ));
                }
            }
            "init" => {
                if !states.is_empty() || !actions.is_empty() {
                    return Err(mixed(&cur, decl.keyword.offset));
                }
                let s = init.get_or_insert_with(|| with_agents(sig, State::empty(sig.num_vars())));
                parse_assignments(&cur, sig, decl.rest, s)?;
            }
            "do" => {
                if !states.is_empty() {
                    return Err(mixed(&cur, decl.keyword.offset));
                }
                let a = single_name(&cur, &decl)?;
                if domain.action(a.text).is_none() {
                    return Err(cur.error(a.offset, ParseErrorKind::Reference, format!("unknown action `{}`", a.text)));
                }
                actions.push(a.text.to_string());
            }
            "state" => {
                if init.is_some() || !actions.is_empty() {
                    return Err(mixed(&cur, decl.keyword.offset));
                }
                let mut s = with_agents(sig, State::empty(sig.num_vars()));
                if !cur.tokens(decl.rest).is_empty() {
                    parse_assignments(&cur, sig, decl.rest, &mut s)?;
                }
                states.push(s);
            }
            other => {
                return Err(cur.error(
                    decl.keyword.offset,
                    ParseErrorKind::Syntax,
                    format!("unknown declaration `{other}`"),
                ))
            }
        }
    }

    let body = if let Some(init) = init {
        if let Some(v) = sig.vars().find(|v| !init.contains(*v)) {
            return Err(cur.error(
                first.keyword.offset,
                ParseErrorKind::Reference,
                format!("initial state does not assign `{}`", sig.var_name(v)),
            ));
        }
        TraceBody::Actions { init, actions }
    } else if !states.is_empty() {
        TraceBody::States(states)
    } else {
        return Err(cur.error(cur.eof(), ParseErrorKind::Syntax, "trace has neither `init` nor `state` lines"));
    };
    Ok(Trace { name, body })
}
