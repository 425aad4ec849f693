use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// Truth value produced by one of the semantics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TruthStatus {
    True,
    False,
    /// Single-context proposition with no value in this state.
    Gap,
    /// Cross-context compound with an operand lacking a value.
    NoValue,
    /// Born degree in `[0, 1]`.
    Degree(f64),
}

impl TruthStatus {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthStatus::True
        } else {
            TruthStatus::False
        }
    }

    /// `Some(b)` for `True`/`False`.
    pub fn definite(self) -> Option<bool> {
        match self {
            TruthStatus::True => Some(true),
            TruthStatus::False => Some(false),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TruthStatus::True => "True",
            TruthStatus::False => "False",
            TruthStatus::Gap => "Gap",
            TruthStatus::NoValue => "NoValue",
            TruthStatus::Degree(_) => "Degree",
        }
    }
}

impl fmt::Display for TruthStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthStatus::Degree(r) => write!(f, "Degree({r:.12})"),
            other => f.write_str(other.label()),
        }
    }
}

/// What a report records for a node: a truth status, or the bivalent
/// semantics declining to assign one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Outcome {
    Status(TruthStatus),
    Undefined {
        range_residual: Option<f64>,
        kernel_residual: Option<f64>,
    },
}

impl Outcome {
    pub fn status(self) -> Option<TruthStatus> {
        match self {
            Outcome::Status(s) => Some(s),
            Outcome::Undefined { .. } => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Status(s) => s.label(),
            Outcome::Undefined { .. } => "Undefined",
        }
    }

    pub fn definite(self) -> Option<bool> {
        self.status().and_then(TruthStatus::definite)
    }
}

impl From<TruthStatus> for Outcome {
    fn from(s: TruthStatus) -> Self {
        Outcome::Status(s)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Status(s) => s.fmt(f),
            Outcome::Undefined { .. } => f.write_str("Undefined"),
        }
    }
}

/// `{"status": "Degree", "degree": 0.5}`; the degree key only for degrees.
impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let degree = match self {
            Outcome::Status(TruthStatus::Degree(r)) => Some(*r),
            _ => None,
        };
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("status", self.label())?;
        if let Some(r) = degree {
            map.serialize_entry("degree", &r)?;
        }
        map.end()
    }
}

impl Serialize for TruthStatus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Outcome::Status(*self).serialize(serializer)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Bivalent,
    Degree,
    Super,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Bivalent => "bivalent",
            Semantics::Degree => "degree",
            Semantics::Super => "super",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bivalent" => Ok(Semantics::Bivalent),
            "degree" => Ok(Semantics::Degree),
            "super" | "supervaluation" => Ok(Semantics::Super),
            other => Err(format!("unknown semantics {other:?}")),
        }
    }
}
