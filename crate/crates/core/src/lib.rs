//! Truth assignments for propositions about finite-dimensional quantum
//! systems under three semantics: classical bivalent, Born degree, and
//! supervaluation with truth-value gaps.
//!
//! Propositions are projectors on ℂⁿ. Commuting projectors form contexts in
//! which `&`, `|`, `^` and `~` compile to meet, join, exclusive join and
//! complement. A proposition is super-true in a state iff the state lies in
//! the range of its compiled operator, super-false iff it lies in the kernel,
//! and gapped otherwise.
//!
//! ```
//! use qsv_core::{logic, spin, valuation, Settings};
//!
//! let settings = Settings::default();
//! let binding = spin::spin_binding();
//! let up = spin::builtin_state("z+").unwrap();
//! let f = logic::bind(logic::parse("X+ ^ X-").unwrap(), &binding).unwrap();
//! let status = valuation::valuate_super(&up, &f, &settings).unwrap();
//! assert_eq!(status, valuation::TruthStatus::True);
//! ```

pub mod audit;
mod error;
pub mod hilbert;
pub mod lattice;
pub mod logic;
pub mod sampling;
mod settings;
pub mod spin;
pub mod valuation;

pub use error::{Error, ParseError, Result, SyntaxError};
pub use settings::Settings;
