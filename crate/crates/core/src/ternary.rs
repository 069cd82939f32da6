use std::fmt;
use std::ops::Not;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Three-valued truth: false, unknown, true, ordered `0 < 1/2 < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ternary {
    False,
    Unknown,
    True,
}

impl Ternary {
    /// Numeric value in `{0, 0.5, 1}`.
    pub fn as_f64(self) -> f64 {
        match self {
            Ternary::False => 0.0,
            Ternary::Unknown => 0.5,
            Ternary::True => 1.0,
        }
    }

    pub fn and(self, other: Ternary) -> Ternary {
        self.min(other)
    }

    pub fn or(self, other: Ternary) -> Ternary {
        self.max(other)
    }

    pub fn is_unknown(self) -> bool {
        self == Ternary::Unknown
    }

    /// Goal keyword spelling: `true`, `false` or `unknown`.
    pub fn keyword(self) -> &'static str {
        match self {
            Ternary::False => "false",
            Ternary::Unknown => "unknown",
            Ternary::True => "true",
        }
    }
}

impl From<bool> for Ternary {
    fn from(b: bool) -> Self {
        if b {
            Ternary::True
        } else {
            Ternary::False
        }
    }
}

impl Not for Ternary {
    type Output = Ternary;

    /// `1 - x`.
    fn not(self) -> Ternary {
        match self {
            Ternary::False => Ternary::True,
            Ternary::Unknown => Ternary::Unknown,
            Ternary::True => Ternary::False,
        }
    }
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ternary::False => "0",
            Ternary::Unknown => "1/2",
            Ternary::True => "1",
        })
    }
}

impl FromStr for Ternary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true" | "1" => Ok(Ternary::True),
            "false" | "0" => Ok(Ternary::False),
            "unknown" | "1/2" => Ok(Ternary::Unknown),
            other => Err(format!("expected true, false or unknown, found `{other}`")),
        }
    }
}
