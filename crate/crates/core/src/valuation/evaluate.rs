use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::status::{Outcome, Semantics, TruthStatus};
use crate::hilbert::{expectation, ComplexMatrix, Projector, StateVector};
use crate::lattice;
use crate::logic::{self, BinOp, BoundFormula, Compiled, Formula};
use crate::{Error, Result, Settings};

/// Bivalent valuation of a single projector: `True` on its range, `False`
/// on its kernel, and [`Error::Undefined`] anywhere else.
pub fn valuate_bivalent(v: &StateVector, p: &Projector, settings: &Settings) -> Result<TruthStatus> {
    let range_residual = p.range_basis().distance(v)?;
    let kernel_residual = p.kernel_basis().distance(v)?;
    if range_residual <= settings.eps_member {
        Ok(TruthStatus::True)
    } else if kernel_residual <= settings.eps_member {
        Ok(TruthStatus::False)
    } else {
        Err(Error::Undefined {
            range_residual,
            kernel_residual,
        })
    }
}

/// Born degree of the compiled operator; `NoValue` across contexts.
pub fn valuate_degree(v: &StateVector, bf: &BoundFormula<'_>, settings: &Settings) -> Result<TruthStatus> {
    match logic::compile(bf, settings)? {
        Compiled::Operator(p) => Ok(TruthStatus::Degree(expectation(v, &p)?)),
        Compiled::CrossContext { .. } => Ok(TruthStatus::NoValue),
    }
}

/// Supervaluation: membership in the range/kernel of the compiled operator
/// for single-context formulas, classical combination of definite maximal
/// single-context parts otherwise.
pub fn valuate_super(v: &StateVector, bf: &BoundFormula<'_>, settings: &Settings) -> Result<TruthStatus> {
    let report = evaluate(v, bf, Semantics::Super, settings)?;
    Ok(report.outcome.status().expect("supervaluation always yields a status"))
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub subformula: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub justification: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValuationReport {
    pub formula: String,
    pub semantics: Semantics,
    #[serde(flatten)]
    pub outcome: Outcome,
    /// Compiled operator when the whole formula lies in one context.
    pub operator: Option<ComplexMatrix>,
    /// Post-order: every subformula, children before parents.
    pub trace: Vec<TraceEntry>,
}

impl ValuationReport {
    pub fn status(&self) -> Option<TruthStatus> {
        self.outcome.status()
    }
}

impl fmt::Display for ValuationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formula:   {}", self.formula)?;
        writeln!(f, "semantics: {}", self.semantics)?;
        writeln!(f, "status:    {}", self.outcome.label())?;
        if let Some(TruthStatus::Degree(r)) = self.status() {
            writeln!(f, "degree:    {r:.12}")?;
        }
        if let Some(op) = &self.operator {
            writeln!(f, "operator:")?;
            for line in op.to_string().lines() {
                writeln!(f, "  {line}")?;
            }
        }
        writeln!(f, "trace:")?;
        let width = self.trace.iter().map(|t| t.subformula.chars().count()).max().unwrap_or(0);
        for t in &self.trace {
            let pad = width - t.subformula.chars().count();
            writeln!(
                f,
                "  {}{}  {:<9} {}",
                t.subformula,
                " ".repeat(pad),
                t.outcome.to_string(),
                t.justification
            )?;
        }
        Ok(())
    }
}

/// Evaluates `bf` in state `v` under `semantics`, recording every subformula.
pub fn evaluate(
    v: &StateVector,
    bf: &BoundFormula<'_>,
    semantics: Semantics,
    settings: &Settings,
) -> Result<ValuationReport> {
    if v.dim() != bf.binding().dim() {
        return Err(Error::DimensionMismatch {
            expected: bf.binding().dim(),
            found: v.dim(),
        });
    }
    let mut walker = Walker {
        state: v,
        bf,
        semantics,
        settings,
        trace: Vec::new(),
    };
    let root = walker.walk(bf.formula())?;
    Ok(ValuationReport {
        formula: bf.formula().to_string(),
        semantics,
        outcome: root.outcome,
        operator: root.operator.map(|p| p.matrix().clone()),
        trace: walker.trace,
    })
}

struct Node<'b> {
    atoms: BTreeSet<&'b str>,
    operator: Option<Projector>,
    outcome: Outcome,
}

struct Walker<'a, 'b> {
    state: &'a StateVector,
    bf: &'a BoundFormula<'b>,
    semantics: Semantics,
    settings: &'a Settings,
    trace: Vec<TraceEntry>,
}

impl<'a, 'b> Walker<'a, 'b> {
    fn walk(&mut self, f: &'a Formula) -> Result<Node<'a>> {
        let (atoms, operator, combined) = match f {
            Formula::Atom(name) => {
                let p = self.bf.projector(name).clone();
                (BTreeSet::from([name.as_str()]), Some(p), None)
            }
            Formula::Not(inner) => {
                let child = self.walk(inner)?;
                let combined = match child.operator {
                    Some(_) => None,
                    None => Some(self.combine_not(child.outcome)),
                };
                (child.atoms, child.operator.map(|p| p.complement()), combined)
            }
            _ => {
                let (op, a, b) = f.as_binary().unwrap();
                let left = self.walk(a)?;
                let right = self.walk(b)?;
                let clash = self.clash(&left.atoms, &right.atoms)?;
                let operator = match (&left.operator, &right.operator, &clash) {
                    (Some(p), Some(q), None) => Some(logic::apply(op, p, q, self.settings)?),
                    _ => None,
                };
                let combined = match operator {
                    Some(_) => None,
                    None => Some(self.combine(op, left.outcome, right.outcome, clash)),
                };
                let mut atoms = left.atoms;
                atoms.extend(right.atoms);
                (atoms, operator, combined)
            }
        };

        let (outcome, justification) = match (combined, &operator) {
            (Some(c), _) => c,
            (None, Some(p)) => self.single_context(p, f)?,
            (None, None) => unreachable!("node is either compiled or combined"),
        };
        self.trace.push(TraceEntry {
            subformula: f.to_string(),
            outcome,
            justification,
        });
        Ok(Node {
            atoms,
            operator,
            outcome,
        })
    }

    fn clash(&self, left: &BTreeSet<&str>, right: &BTreeSet<&str>) -> Result<Option<(String, String)>> {
        for a in left {
            for b in right {
                let (p, q) = (self.bf.projector(a), self.bf.projector(b));
                if a != b && !lattice::commutes(p, q, self.settings)? {
                    return Ok(Some((a.to_string(), b.to_string())));
                }
            }
        }
        Ok(None)
    }

    fn single_context(&self, p: &Projector, f: &Formula) -> Result<(Outcome, String)> {
        let what = match f {
            Formula::Atom(a) => format!("P[{a}]"),
            _ => "compiled operator".to_string(),
        };
        if self.semantics == Semantics::Degree {
            let r = expectation(self.state, p)?;
            return Ok((
                TruthStatus::Degree(r).into(),
                format!("⟨ψ|{what}|ψ⟩ = {r:.12}"),
            ));
        }
        let rr = p.range_basis().distance(self.state)?;
        let kr = p.kernel_basis().distance(self.state)?;
        let eps = self.settings.eps_member;
        let out = if p.is_identity() {
            (TruthStatus::True.into(), format!("{what} is 1̂; ran(1̂) = ℋ"))
        } else if p.is_zero() {
            (TruthStatus::False.into(), format!("{what} is 0̂; ker(0̂) = ℋ"))
        } else if rr <= eps {
            (
                TruthStatus::True.into(),
                format!("state ∈ ran({what}) (distance {rr:.1e})"),
            )
        } else if kr <= eps {
            (
                TruthStatus::False.into(),
                format!("state ∈ ker({what}) (distance {kr:.1e})"),
            )
        } else {
            let outcome = match self.semantics {
                Semantics::Bivalent => Outcome::Undefined {
                    range_residual: Some(rr),
                    kernel_residual: Some(kr),
                },
                _ => TruthStatus::Gap.into(),
            };
            let tail = match self.semantics {
                Semantics::Bivalent => "not bivalent",
                _ => "truth-value gap",
            };
            (
                outcome,
                format!("state ∉ ran({what}) ∪ ker({what}) (distances {rr:.3e}, {kr:.3e}): {tail}"),
            )
        };
        Ok(out)
    }

    fn valueless(&self) -> Outcome {
        match self.semantics {
            Semantics::Bivalent => Outcome::Undefined {
                range_residual: None,
                kernel_residual: None,
            },
            _ => TruthStatus::NoValue.into(),
        }
    }

    fn combine_not(&self, inner: Outcome) -> (Outcome, String) {
        match inner.definite() {
            Some(b) if self.semantics != Semantics::Degree => (
                TruthStatus::from_bool(!b).into(),
                "cross-context negation of a definite value".to_string(),
            ),
            _ => (
                self.valueless(),
                "cross-context negation of a valueless operand".to_string(),
            ),
        }
    }

    fn combine(
        &self,
        op: BinOp,
        left: Outcome,
        right: Outcome,
        clash: Option<(String, String)>,
    ) -> (Outcome, String) {
        let why = match &clash {
            Some((a, b)) => format!("cross-context ({a} and {b} do not commute)"),
            None => "cross-context operand".to_string(),
        };
        match (left.definite(), right.definite()) {
            (Some(l), Some(r)) if self.semantics != Semantics::Degree => (
                TruthStatus::from_bool(op.apply(l, r)).into(),
                format!("{why}: classical '{}' on definite operands", op.symbol()),
            ),
            _ => {
                let tail = match self.semantics {
                    Semantics::Degree => "no degree is defined",
                    _ => "an operand has no value, so the compound has none",
                };
                (self.valueless(), format!("{why}: {tail}"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{bind, parse};
    use crate::spin::{builtin_projector, builtin_state, spin_binding};

    fn run(sem: Semantics, text: &str) -> ValuationReport {
        let b = spin_binding();
        let bf = bind(parse(text).unwrap(), &b).unwrap();
        evaluate(&builtin_state("z+").unwrap(), &bf, sem, &Settings::default()).unwrap()
    }

    fn sup(text: &str) -> TruthStatus {
        run(Semantics::Super, text).status().unwrap()
    }

    #[test]
    fn bivalent_atoms() {
        let s = Settings::default();
        let up = builtin_state("z+").unwrap();
        assert_eq!(
            valuate_bivalent(&up, &builtin_projector("z+").unwrap(), &s).unwrap(),
            TruthStatus::True
        );
        assert_eq!(
            valuate_bivalent(&up, &builtin_projector("z-").unwrap(), &s).unwrap(),
            TruthStatus::False
        );
        match valuate_bivalent(&up, &builtin_projector("x+").unwrap(), &s) {
            Err(Error::Undefined {
                range_residual,
                kernel_residual,
            }) => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                assert!((range_residual - h).abs() < 1e-12);
                assert!((kernel_residual - h).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degree_examples() {
        let b = spin_binding();
        let s = Settings::default();
        let up = builtin_state("z+").unwrap();
        let deg = |t: &str| match valuate_degree(&up, &bind(parse(t).unwrap(), &b).unwrap(), &s).unwrap() {
            TruthStatus::Degree(r) => r,
            other => panic!("{other:?}"),
        };
        assert!((deg("X+") - 0.5).abs() < 1e-12);
        assert!((deg("X+ ^ X-") - 1.0).abs() < 1e-12);
        assert_eq!(deg("Z-"), 0.0);
        let cross = valuate_degree(&up, &bind(parse("Z+ & X+").unwrap(), &b).unwrap(), &s).unwrap();
        assert_eq!(cross, TruthStatus::NoValue);
    }

    #[test]
    fn supervaluation_examples() {
        assert_eq!(sup("X+"), TruthStatus::Gap);
        assert_eq!(sup("X+ ^ X-"), TruthStatus::True);
        assert_eq!(sup("X+ & ~X+"), TruthStatus::False);
        assert_eq!(sup("Z+ & (X+ | ~X+)"), TruthStatus::True);
        assert_eq!(sup("(Z+ & X+) | (Z+ & ~X+)"), TruthStatus::NoValue);
        assert_eq!(sup("Z+ & ~Z-"), TruthStatus::True);
        // definite cross-context operands combine classically
        assert_eq!(sup("Z- | (X+ ^ X-)"), TruthStatus::True);
        assert_eq!(sup("~(Z+ & (X+ | ~X+))"), TruthStatus::False);
        // a false operand does not rescue a gapped one
        assert_eq!(sup("Z- & X+"), TruthStatus::NoValue);
    }

    #[test]
    fn trace_covers_every_subformula() {
        let r = run(Semantics::Super, "X+ | ~X+");
        let subs: Vec<_> = r.trace.iter().map(|t| t.subformula.as_str()).collect();
        assert_eq!(subs, ["X+", "X+", "~X+", "X+ | ~X+"]);
        let statuses: Vec<_> = r.trace.iter().map(|t| t.outcome.label()).collect();
        assert_eq!(statuses, ["Gap", "Gap", "Gap", "True"]);
        assert!(r.operator.is_some());
        assert!(r.trace[3].justification.contains("1̂"));

        let r = run(Semantics::Super, "(Z+ & X+) | (Z+ & ~X+)");
        assert_eq!(r.trace.len(), 8);
        assert!(r.operator.is_none());
        assert!(r.trace.last().unwrap().justification.contains("cross-context"));
    }

    #[test]
    fn bivalent_formula_reports_undefined() {
        let r = run(Semantics::Bivalent, "X+");
        assert_eq!(r.outcome.label(), "Undefined");
        assert_eq!(run(Semantics::Bivalent, "X+ ^ X-").status(), Some(TruthStatus::True));
        assert_eq!(run(Semantics::Bivalent, "Z+ & (X+ | ~X+)").status(), Some(TruthStatus::True));
        assert_eq!(run(Semantics::Bivalent, "Z+ & X+").outcome.label(), "Undefined");
    }

    #[test]
    fn report_json_shape() {
        let r = run(Semantics::Degree, "X+");
        let j: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(j["semantics"], "degree");
        assert_eq!(j["status"], "Degree");
        assert!((j["degree"].as_f64().unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(j["operator"][0][1], serde_json::json!([0.5, 0.0]));
        assert_eq!(j["trace"][0]["subformula"], "X+");
    }
}
