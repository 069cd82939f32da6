//! A number in a box that agents take turns peeking at.
//!
//! Variables: `n`, and `peeking_<agent>` for every agent. Peeking flags are
//! public; an agent sees `n` only while its own flag is true.

use std::sync::Arc;

use crate::error::ModelError;
use crate::observation::{GuardedModel, ObservationModel, Visibility};
use crate::signature::{Signature, Value};

use super::require_var;

pub const DOMAIN: &str = include_str!("../../benchmarks/number/domain.gjp");

pub fn model(sig: &Signature) -> Result<Arc<dyn ObservationModel>, ModelError> {
    let n = require_var("number", sig, "n")?;
    let mut b = GuardedModel::builder("number", sig);
    for a in sig.agents() {
        let flag = require_var("number", sig, &format!("peeking_{}", sig.agent_name(a)))?;
        b.public(flag);
    }
    for a in sig.agents() {
        let flag = sig
            .lookup_var(&format!("peeking_{}", sig.agent_name(a)))
            .expect("checked above");
        b.set(a, n, Visibility::When(vec![vec![(flag, Value::Bool(true))]]));
    }
    for v in sig.vars() {
        if v != n && !sig.var_name(v).starts_with("peeking_") && sig.var(v).agent.is_none() {
            b.public(v);
        }
    }
    Ok(Arc::new(b.build()?))
}
