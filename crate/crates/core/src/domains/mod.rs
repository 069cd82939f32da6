//! Built-in benchmark domains and their problem instances.

pub mod bbl;
pub mod grapevine;
pub mod number;

use std::fmt;
use std::str::FromStr;

use crate::error::ModelError;
use crate::signature::{Signature, VarId};

fn require_var(model: &str, sig: &Signature, name: &str) -> Result<VarId, ModelError> {
    sig.lookup_var(name).ok_or_else(|| ModelError::MissingVariable {
        model: model.to_string(),
        var: name.to_string(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BenchSet {
    Number,
    Grapevine,
    Bbl,
}

impl BenchSet {
    pub const ALL: [BenchSet; 3] = [BenchSet::Number, BenchSet::Grapevine, BenchSet::Bbl];

    pub fn name(self) -> &'static str {
        match self {
            BenchSet::Number => "number",
            BenchSet::Grapevine => "grapevine",
            BenchSet::Bbl => "bbl",
        }
    }

    pub fn domain_text(self) -> &'static str {
        match self {
            BenchSet::Number => number::DOMAIN,
            BenchSet::Grapevine => grapevine::DOMAIN,
            BenchSet::Bbl => bbl::DOMAIN,
        }
    }
}

impl fmt::Display for BenchSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BenchSet::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown instance set `{s}`; expected number, grapevine, bbl or all"))
    }
}

/// A shipped problem instance.
#[derive(Clone, Copy, Debug)]
pub struct Instance {
    pub id: &'static str,
    pub set: BenchSet,
    pub problem: &'static str,
    /// Known optimal plan length under the reference encoding.
    pub reference_length: usize,
}

macro_rules! instance {
    ($set:expr, $dir:literal, $id:literal, $len:expr) => {
        Instance {
            id: $id,
            set: $set,
            problem: include_str!(concat!("../../benchmarks/", $dir, "/", $id, ".gjp")),
            reference_length: $len,
        }
    };
}

const INSTANCES: &[Instance] = &[
    instance!(BenchSet::Number, "number", "N0", 4),
    instance!(BenchSet::Number, "number", "N1", 2),
    instance!(BenchSet::Number, "number", "N2", 4),
    instance!(BenchSet::Number, "number", "N3", 6),
    instance!(BenchSet::Number, "number", "N4", 8),
    instance!(BenchSet::Number, "number", "N5", 4),
    instance!(BenchSet::Number, "number", "N6", 4),
    instance!(BenchSet::Grapevine, "grapevine", "G0", 1),
    instance!(BenchSet::Grapevine, "grapevine", "G1", 4),
    instance!(BenchSet::Grapevine, "grapevine", "G2", 6),
    instance!(BenchSet::Grapevine, "grapevine", "G3", 3),
    instance!(BenchSet::Grapevine, "grapevine", "G4", 4),
    instance!(BenchSet::Grapevine, "grapevine", "G5", 4),
    instance!(BenchSet::Grapevine, "grapevine", "G6", 4),
    instance!(BenchSet::Bbl, "bbl", "BBL0", 1),
    instance!(BenchSet::Bbl, "bbl", "BBL1", 2),
    instance!(BenchSet::Bbl, "bbl", "BBL2", 5),
    instance!(BenchSet::Bbl, "bbl", "BBL3", 5),
    instance!(BenchSet::Bbl, "bbl", "BBL4", 9),
    instance!(BenchSet::Bbl, "bbl", "BBL5", 9),
    instance!(BenchSet::Bbl, "bbl", "BBL6", 1),
];

/// Shipped instances of one set, in order.
pub fn instances(set: BenchSet) -> Vec<Instance> {
    INSTANCES.iter().copied().filter(|i| i.set == set).collect()
}

pub fn all_instances() -> &'static [Instance] {
    INSTANCES
}

pub fn instance(id: &str) -> Option<Instance> {
    INSTANCES.iter().copied().find(|i| i.id == id)
}
