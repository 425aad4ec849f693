use std::collections::BTreeMap;

use serde::Deserialize;

use super::ast::Formula;
use crate::hilbert::{ComplexMatrix, Projector, C64};
use crate::{spin, Error, Result, Settings};

/// Atom names bound to projectors on a common space.
#[derive(Clone, Debug)]
pub struct Binding {
    dim: usize,
    atoms: BTreeMap<String, Projector>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BindingFile {
    dim: usize,
    atoms: BTreeMap<String, AtomSpec>,
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum AtomSpec {
    Matrix { matrix: Vec<Vec<[f64; 2]>> },
    Builtin { builtin: String },
}

impl Binding {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            atoms: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, name: impl Into<String>, p: Projector) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        self.atoms.insert(name.into(), p);
        Ok(())
    }

    pub fn with(mut self, name: impl Into<String>, p: Projector) -> Result<Self> {
        self.insert(name, p)?;
        Ok(self)
    }

    /// Reads the JSON binding format:
    /// `{"dim": n, "atoms": {"X+": {"matrix": [[[re, im], ...], ...]} | {"builtin": "x+"}}}`.
    pub fn from_json(text: &str, settings: &Settings) -> Result<Self> {
        let file: BindingFile = serde_json::from_str(text)?;
        settings.check_dim(file.dim)?;
        let mut binding = Binding::new(file.dim);
        for (name, spec) in file.atoms {
            let matrix = match spec {
                AtomSpec::Matrix { matrix } => {
                    let rows: Vec<Vec<C64>> = matrix
                        .iter()
                        .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
                        .collect();
                    ComplexMatrix::from_rows(&rows)?
                }
                AtomSpec::Builtin { builtin } => {
                    let m = spin::builtin_matrix(&builtin)
                        .ok_or_else(|| Error::UnknownBuiltin(builtin.clone()))?;
                    if file.dim != 2 {
                        return Err(Error::BuiltinDimension {
                            name: builtin,
                            dim: file.dim,
                        });
                    }
                    m
                }
            };
            binding.insert(name, Projector::validate(matrix, settings)?)?;
        }
        Ok(binding)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, name: &str) -> Option<&Projector> {
        self.atoms.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.atoms.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Projector)> {
        self.atoms.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// A formula whose every atom resolves in the binding.
#[derive(Clone, Debug)]
pub struct BoundFormula<'b> {
    formula: Formula,
    binding: &'b Binding,
}

impl<'b> BoundFormula<'b> {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn binding(&self) -> &'b Binding {
        self.binding
    }

    pub(crate) fn projector(&self, atom: &str) -> &'b Projector {
        self.binding
            .get(atom)
            .expect("bound formula atoms are resolved")
    }
}

/// Resolves every atom; all unresolved names are reported together.
pub fn bind(formula: Formula, binding: &Binding) -> Result<BoundFormula<'_>> {
    let missing: Vec<String> = formula
        .atoms()
        .into_iter()
        .filter(|a| binding.get(a).is_none())
        .map(str::to_owned)
        .collect();
    if !missing.is_empty() {
        return Err(Error::UnboundAtoms(missing));
    }
    Ok(BoundFormula { formula, binding })
}
