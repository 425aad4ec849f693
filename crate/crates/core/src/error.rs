use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix shape mismatch: expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("dimension must be positive")]
    EmptyDimension,
    #[error("dimension {dim} exceeds the configured cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian: max |M - M†| = {residual:.3e}")]
    NotHermitian { residual: f64 },
    #[error("matrix is not idempotent: max |M² - M| = {residual:.3e}")]
    NotIdempotent { residual: f64 },
    #[error("state vector is zero")]
    ZeroVector,
    #[error("state vector is not normalized: ‖v‖ = {norm}")]
    NotNormalized { norm: f64 },
    #[error("basis vectors are not orthonormal: max deviation {residual:.3e}")]
    NotOrthonormal { residual: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("eigendecomposition failed to converge")]
    DecompositionFailure,
    #[error("{}", non_commuting_message(.pair, *.residual))]
    NonCommuting {
        pair: Option<(String, String)>,
        residual: f64,
    },
    #[error("context member {0:?} is trivial (0̂ or 1̂)")]
    TrivialMember(String),
    #[error("context has no members")]
    EmptyContext,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unbound atoms: {}", .0.join(", "))]
    UnboundAtoms(Vec<String>),
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("builtin {name:?} needs dimension 2, binding has dimension {dim}")]
    BuiltinDimension { name: String, dim: usize },
    #[error("invalid binding file: {0}")]
    BindingFormat(#[from] serde_json::Error),
    #[error("bivalent valuation undefined: ran residual {range_residual:.3e}, ker residual {kernel_residual:.3e}")]
    Undefined {
        range_residual: f64,
        kernel_residual: f64,
    },
    #[error("{law} takes {expected} atom(s), got {found}")]
    LawArity {
        law: &'static str,
        expected: usize,
        found: usize,
    },
}

fn non_commuting_message(pair: &Option<(String, String)>, residual: f64) -> String {
    match pair {
        Some((a, b)) => format!("{a} and {b} do not commute (residual {residual:.3e})"),
        None => format!("operators do not commute (residual {residual:.3e})"),
    }
}

/// A syntax error at a 1-based line/column position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {}:{}: found {}, expected one of {}",
            self.line,
            self.column,
            self.found,
            self.expected.join(", ")
        )
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("input is {len} bytes, limit is {limit}")]
    TooLong { len: usize, limit: usize },
    #[error("formula nesting exceeds depth {limit} at {line}:{column}")]
    TooDeep {
        limit: usize,
        line: usize,
        column: usize,
    },
}
