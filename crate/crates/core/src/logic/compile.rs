use super::ast::{BinOp, Formula};
use super::binding::{Binding, BoundFormula};
use crate::hilbert::Projector;
use crate::lattice;
use crate::{Result, Settings};

/// Result of compiling a bound formula to an operator.
#[derive(Clone, Debug)]
pub enum Compiled {
    Operator(Projector),
    /// The formula mixes atoms whose projectors do not commute.
    CrossContext { left: String, right: String },
}

impl Compiled {
    pub fn operator(&self) -> Option<&Projector> {
        match self {
            Compiled::Operator(p) => Some(p),
            Compiled::CrossContext { .. } => None,
        }
    }
}

/// First pair of atoms (in sorted order) whose projectors fail to commute.
pub fn find_noncommuting<'a, I>(
    atoms: I,
    binding: &Binding,
    settings: &Settings,
) -> Result<Option<(String, String)>>
where
    I: IntoIterator<Item = &'a str>,
{
    let atoms: Vec<&str> = atoms.into_iter().collect();
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i + 1..] {
            let (Some(p), Some(q)) = (binding.get(a), binding.get(b)) else {
                continue;
            };
            if !lattice::commutes(p, q, settings)? {
                return Ok(Some((a.to_string(), b.to_string())));
            }
        }
    }
    Ok(None)
}

/// Maps `&` to meet, `|` to join, `^` to exclusive join and `~` to complement
/// when all atoms commute.
pub fn compile(bf: &BoundFormula<'_>, settings: &Settings) -> Result<Compiled> {
    let atoms = bf.formula().atoms();
    if let Some((left, right)) = find_noncommuting(atoms, bf.binding(), settings)? {
        return Ok(Compiled::CrossContext { left, right });
    }
    compile_commuting(bf.formula(), bf, settings).map(Compiled::Operator)
}

fn compile_commuting(f: &Formula, bf: &BoundFormula<'_>, settings: &Settings) -> Result<Projector> {
    match f {
        Formula::Atom(a) => Ok(bf.projector(a).clone()),
        Formula::Not(inner) => Ok(compile_commuting(inner, bf, settings)?.complement()),
        _ => {
            let (op, a, b) = f.as_binary().unwrap();
            let p = compile_commuting(a, bf, settings)?;
            let q = compile_commuting(b, bf, settings)?;
            apply(op, &p, &q, settings)
        }
    }
}

pub(crate) fn apply(op: BinOp, p: &Projector, q: &Projector, settings: &Settings) -> Result<Projector> {
    match op {
        BinOp::And => lattice::meet(p, q, settings),
        BinOp::Or => lattice::join(p, q, settings),
        BinOp::Xor => lattice::xjoin(p, q, settings),
    }
}
