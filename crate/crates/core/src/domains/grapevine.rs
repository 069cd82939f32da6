//! Agents in two rooms sharing and lying about secrets.
//!
//! Per agent `i`: `loc_i` (public room), `sct_i` (the secret's current
//! spoken value) and `shr_i` (the room `sct_i` was just announced in, or
//! `none`). The owner always sees its own secret; anyone else sees it only
//! while standing in the room where it is being announced.

use std::sync::Arc;

use crate::error::ModelError;
use crate::observation::{GuardedModel, ObservationModel, Visibility};
use crate::signature::{Signature, Value};

use super::require_var;

pub const DOMAIN: &str = include_str!("../../benchmarks/grapevine/domain.gjp");

pub const ROOMS: [&str; 2] = ["room1", "room2"];

pub fn model(sig: &Signature) -> Result<Arc<dyn ObservationModel>, ModelError> {
    let room = |name: &str| {
        sig.lookup_symbol(name).map(Value::Sym).ok_or_else(|| ModelError::Invalid {
            model: "grapevine".into(),
            reason: format!("room `{name}` is not declared"),
        })
    };
    let rooms = [room(ROOMS[0])?, room(ROOMS[1])?];
    let mut b = GuardedModel::builder("grapevine", sig);
    for owner in sig.agents() {
        let name = sig.agent_name(owner);
        let loc = require_var("grapevine", sig, &format!("loc_{name}"))?;
        let shr = require_var("grapevine", sig, &format!("shr_{name}"))?;
        b.public(loc).public(shr);
    }
    for owner in sig.agents() {
        let name = sig.agent_name(owner);
        let sct = require_var("grapevine", sig, &format!("sct_{name}"))?;
        let shr = sig.lookup_var(&format!("shr_{name}")).expect("checked above");
        for listener in sig.agents() {
            let rule = if listener == owner {
                Visibility::Always
            } else {
                let loc = sig
                    .lookup_var(&format!("loc_{}", sig.agent_name(listener)))
                    .expect("checked above");
                Visibility::When(rooms.iter().map(|&r| vec![(loc, r), (shr, r)]).collect())
            };
            b.set(listener, sct, rule);
        }
    }
    Ok(Arc::new(b.build()?))
}
