use std::fmt;

use serde::Serialize;

use super::evaluate::{evaluate, ValuationReport};
use super::status::{Semantics, TruthStatus};
use crate::hilbert::{ComplexMatrix, StateVector};
use crate::logic::{bind, Binding, Formula};
use crate::{Error, Result, Settings};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    ExcludedMiddle,
    NonContradiction,
    Distributivity,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::ExcludedMiddle => "excluded-middle",
            Law::NonContradiction => "non-contradiction",
            Law::Distributivity => "distributivity",
        }
    }

    fn arity(self) -> usize {
        match self {
            Law::Distributivity => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawVerdict {
    Holds,
    Fails,
    /// One side lacks a truth value, so neither equivalence nor
    /// inequivalence can be asserted.
    EquivalenceMeaningless,
}

impl LawVerdict {
    pub fn name(self) -> &'static str {
        match self {
            LawVerdict::Holds => "holds",
            LawVerdict::Fails => "fails",
            LawVerdict::EquivalenceMeaningless => "equivalence-meaningless",
        }
    }
}

impl fmt::Display for LawVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An operator equation checked numerically.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorIdentity {
    pub statement: String,
    pub operator: ComplexMatrix,
    pub residual: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: Law,
    pub atoms: Vec<String>,
    /// One report for the single-formula laws; LHS then RHS for distributivity.
    pub sides: Vec<ValuationReport>,
    pub identity: Option<OperatorIdentity>,
    pub verdict: LawVerdict,
}

impl LawReport {
    pub fn status(&self) -> Option<TruthStatus> {
        self.sides[0].status()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "law:     {} ({})", self.law, self.atoms.join(", "))?;
        for (i, side) in self.sides.iter().enumerate() {
            let tag = match (self.sides.len(), i) {
                (1, _) => "formula",
                (_, 0) => "lhs",
                _ => "rhs",
            };
            writeln!(f, "{tag}:{}{}  status: {}", " ".repeat(8 - tag.len()), side.formula, side.outcome.label())?;
        }
        if let Some(id) = &self.identity {
            writeln!(
                f,
                "identity: {} ({}, residual {:.1e})",
                id.statement,
                if id.holds { "holds" } else { "fails" },
                id.residual
            )?;
        }
        writeln!(f, "verdict: {}", self.verdict)
    }
}

/// Evaluates one of the classical laws on atoms resolved in `binding`.
///
/// Excluded middle and non-contradiction take one atom `a` and check
/// `a | ~a` and `a & ~a`. Distributivity takes `(z, x)` and compares
/// `z & (x | ~x)` against `(z & x) | (z & ~x)`.
pub fn check_law(
    law: Law,
    v: &StateVector,
    binding: &Binding,
    atoms: &[&str],
    settings: &Settings,
) -> Result<LawReport> {
    if atoms.len() != law.arity() {
        return Err(Error::LawArity {
            law: law.name(),
            expected: law.arity(),
            found: atoms.len(),
        });
    }
    let side = |f: Formula| -> Result<ValuationReport> {
        let bf = bind(f, binding)?;
        evaluate(v, &bf, Semantics::Super, settings)
    };
    let atom = |i: usize| Formula::atom(atoms[i]);
    let neg = |i: usize| Formula::not(atom(i));

    let (sides, identity, verdict) = match law {
        Law::ExcludedMiddle | Law::NonContradiction => {
            let (formula, expected, want, label) = if law == Law::ExcludedMiddle {
                (Formula::or(atom(0), neg(0)), ComplexMatrix::identity(binding.dim()), TruthStatus::True, "1̂")
            } else {
                (Formula::and(atom(0), neg(0)), ComplexMatrix::zeros(binding.dim()), TruthStatus::False, "0̂")
            };
            let report = side(formula)?;
            let operator = report.operator.clone().expect("single-atom law compiles");
            let residual = operator.max_abs_diff(&expected);
            let op = if law == Law::ExcludedMiddle { "⊔" } else { "⊓" };
            let identity = OperatorIdentity {
                statement: format!("P[{a}] {op} (1̂ − P[{a}]) = {label}", a = atoms[0]),
                operator,
                residual,
                holds: residual <= settings.eps_alg,
            };
            let verdict = if report.status() == Some(want) && identity.holds {
                LawVerdict::Holds
            } else {
                LawVerdict::Fails
            };
            (vec![report], Some(identity), verdict)
        }
        Law::Distributivity => {
            let lhs = side(Formula::and(atom(0), Formula::or(atom(1), neg(1))))?;
            let rhs = side(Formula::or(
                Formula::and(atom(0), atom(1)),
                Formula::and(atom(0), neg(1)),
            ))?;
            let identity = match (&lhs.operator, &rhs.operator) {
                (Some(l), Some(r)) => {
                    let residual = l.max_abs_diff(r);
                    Some(OperatorIdentity {
                        statement: "lhs operator = rhs operator".to_string(),
                        operator: l.clone(),
                        residual,
                        holds: residual <= settings.eps_alg,
                    })
                }
                _ => None,
            };
            let verdict = match (&identity, lhs.outcome.definite(), rhs.outcome.definite()) {
                (Some(id), _, _) if id.holds => LawVerdict::Holds,
                (Some(_), _, _) => LawVerdict::Fails,
                (None, Some(l), Some(r)) if l == r => LawVerdict::Holds,
                (None, Some(_), Some(_)) => LawVerdict::Fails,
                _ => LawVerdict::EquivalenceMeaningless,
            };
            (vec![lhs, rhs], identity, verdict)
        }
    };

    Ok(LawReport {
        law,
        atoms: atoms.iter().map(|a| a.to_string()).collect(),
        sides,
        identity,
        verdict,
    })
}
