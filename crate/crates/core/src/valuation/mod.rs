//! Bivalent, Born-degree and supervaluationist truth assignments, with a
//! checker for excluded middle, non-contradiction and distributivity.

mod evaluate;
mod laws;
mod status;

pub use evaluate::{
    evaluate, valuate_bivalent, valuate_degree, valuate_super, TraceEntry, ValuationReport,
};
pub use laws::{check_law, Law, LawReport, LawVerdict, OperatorIdentity};
pub use status::{Outcome, Semantics, TruthStatus};
