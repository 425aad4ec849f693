//! Contexts of mutually commuting projectors and the lattice operations on
//! them.
//!
//! Meet, join and exclusive join are only defined for commuting arguments.
//! Non-commuting inputs are an error: connectives across contexts are handled
//! by the valuation layer, never by an orthomodular fallback.

use nalgebra::DMatrix;
use std::collections::BTreeMap;

use crate::hilbert::{split_spectrum, ComplexMatrix, Projector, Subspace, C64};
use crate::{Error, Result, Settings};

/// Max-norm of the commutator `PQ − QP`.
pub fn commutator_residual(p: &Projector, q: &Projector) -> Result<f64> {
    same_dim(p, q)?;
    let pq = p.matrix() * q.matrix();
    let qp = q.matrix() * p.matrix();
    Ok(pq.max_abs_diff(&qp))
}

pub fn commutes(p: &Projector, q: &Projector, settings: &Settings) -> Result<bool> {
    Ok(commutator_residual(p, q)? <= settings.eps_alg)
}

fn same_dim(p: &Projector, q: &Projector) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(())
}

fn require_commuting(p: &Projector, q: &Projector, settings: &Settings) -> Result<()> {
    let residual = commutator_residual(p, q)?;
    if residual > settings.eps_alg {
        return Err(Error::NonCommuting {
            pair: None,
            residual,
        });
    }
    Ok(())
}

/// `P ⊓ Q = PQ` for commuting projectors.
pub fn meet(p: &Projector, q: &Projector, settings: &Settings) -> Result<Projector> {
    require_commuting(p, q, settings)?;
    Projector::validate(p.matrix() * q.matrix(), settings)
}

/// `P ⊔ Q = P + Q − PQ` for commuting projectors.
pub fn join(p: &Projector, q: &Projector, settings: &Settings) -> Result<Projector> {
    require_commuting(p, q, settings)?;
    let pq = p.matrix() * q.matrix();
    Projector::validate(&(p.matrix() + q.matrix()) - &pq, settings)
}

pub fn complement(p: &Projector) -> Projector {
    p.complement()
}

/// Exclusive join `(P ⊔ Q) ⊓ (1̂ − P ⊓ Q)`.
pub fn xjoin(p: &Projector, q: &Projector, settings: &Settings) -> Result<Projector> {
    let either = join(p, q, settings)?;
    let both = meet(p, q, settings)?;
    meet(&either, &both.complement(), settings)
}

/// `P ≤ Q` iff `PQ = P`.
pub fn leq(p: &Projector, q: &Projector, settings: &Settings) -> Result<bool> {
    require_commuting(p, q, settings)?;
    let pq = p.matrix() * q.matrix();
    Ok(pq.max_abs_diff(p.matrix()) <= settings.eps_alg)
}

/// Order and orthogonality facts recorded for each member pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFacts {
    pub left: String,
    pub right: String,
    /// `PQ = 0̂`, equivalently `ran(P) ⊆ ker(Q)`.
    pub orthogonal: bool,
    pub left_leq_right: bool,
    pub right_leq_left: bool,
}

/// A nonempty set of labelled, nontrivial, mutually commuting projectors.
#[derive(Clone, Debug)]
pub struct Context {
    ambient_dim: usize,
    members: Vec<(String, Projector)>,
    facts: Vec<PairFacts>,
}

pub fn make_context<I, S>(pairs: I, settings: &Settings) -> Result<Context>
where
    I: IntoIterator<Item = (S, Projector)>,
    S: Into<String>,
{
    let members: Vec<(String, Projector)> =
        pairs.into_iter().map(|(l, p)| (l.into(), p)).collect();
    let Some((_, first)) = members.first() else {
        return Err(Error::EmptyContext);
    };
    let ambient_dim = first.dim();
    for (i, (label, p)) in members.iter().enumerate() {
        if p.dim() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: p.dim(),
            });
        }
        if members[..i].iter().any(|(l, _)| l == label) {
            return Err(Error::DuplicateLabel(label.clone()));
        }
        if p.is_zero() || p.is_identity() {
            return Err(Error::TrivialMember(label.clone()));
        }
    }

    let mut facts = Vec::new();
    for (i, (a, p)) in members.iter().enumerate() {
        for (b, q) in &members[i + 1..] {
            let residual = commutator_residual(p, q)?;
            if residual > settings.eps_alg {
                return Err(Error::NonCommuting {
                    pair: Some((a.clone(), b.clone())),
                    residual,
                });
            }
            facts.push(PairFacts {
                left: a.clone(),
                right: b.clone(),
                orthogonal: (p.matrix() * q.matrix()).max_abs() <= settings.eps_alg,
                left_leq_right: leq(p, q, settings)?,
                right_leq_left: leq(q, p, settings)?,
            });
        }
    }
    Ok(Context {
        ambient_dim,
        members,
        facts,
    })
}

impl Context {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn members(&self) -> &[(String, Projector)] {
        &self.members
    }

    pub fn get(&self, label: &str) -> Option<&Projector> {
        self.members.iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.members.iter().map(|(l, _)| l.as_str())
    }

    pub fn pair_facts(&self) -> &[PairFacts] {
        &self.facts
    }

    pub fn orthogonal(&self, a: &str, b: &str) -> Option<bool> {
        self.facts
            .iter()
            .find(|f| (f.left == a && f.right == b) || (f.left == b && f.right == a))
            .map(|f| f.orthogonal)
    }

    /// True iff every pair of members is orthogonal.
    pub fn is_orthogonal(&self) -> bool {
        self.facts.iter().all(|f| f.orthogonal)
    }

    pub fn joint_eigenstructure(&self, settings: &Settings) -> Result<JointEigenstructure> {
        joint_eigenstructure(self, settings)
    }
}

/// One maximal common eigenspace and the member bits it realizes.
#[derive(Clone, Debug)]
pub struct Block {
    pub subspace: Subspace,
    /// `true` if the block lies in `ran` of the member, `false` if in `ker`.
    pub assignment: BTreeMap<String, bool>,
}

impl Block {
    pub fn projector(&self) -> ComplexMatrix {
        self.subspace.projector_matrix()
    }
}

/// Orthogonal decomposition of ℂⁿ into joint eigenspaces of a context.
#[derive(Clone, Debug)]
pub struct JointEigenstructure {
    pub ambient_dim: usize,
    pub blocks: Vec<Block>,
}

impl JointEigenstructure {
    /// Sum of the projectors of blocks selected by `pick`.
    pub fn reconstruct<F>(&self, mut pick: F) -> ComplexMatrix
    where
        F: FnMut(&BTreeMap<String, bool>) -> bool,
    {
        let mut acc = ComplexMatrix::zeros(self.ambient_dim);
        for block in self.blocks.iter().filter(|b| pick(&b.assignment)) {
            acc = &acc + &block.projector();
        }
        acc
    }
}

/// Refines the whole space member by member: each current block is split by
/// diagonalizing the member compressed onto it. Commutation guarantees the
/// compression is itself a projector, so every piece lands in `ran` or `ker`.
pub fn joint_eigenstructure(ctx: &Context, settings: &Settings) -> Result<JointEigenstructure> {
    let dim = ctx.ambient_dim;
    let mut blocks: Vec<(DMatrix<C64>, BTreeMap<String, bool>)> =
        vec![(DMatrix::identity(dim, dim), BTreeMap::new())];

    for (label, p) in &ctx.members {
        let mut next = Vec::with_capacity(blocks.len() * 2);
        for (basis, assignment) in blocks {
            let compressed = basis.adjoint() * p.matrix().as_dmatrix() * &basis;
            let (inside, outside) = split_spectrum(&compressed)?;
            for (part, bit) in [(inside, true), (outside, false)] {
                if part.is_empty() {
                    continue;
                }
                let cols: Vec<_> = part.basis().iter().map(|u| &basis * u).collect();
                let mut assignment = assignment.clone();
                assignment.insert(label.clone(), bit);
                next.push((DMatrix::from_columns(&cols), assignment));
            }
        }
        blocks = next;
    }

    let blocks: Vec<Block> = blocks
        .into_iter()
        .map(|(basis, assignment)| {
            let vectors = basis.column_iter().map(|c| c.into_owned()).collect();
            Subspace::new(dim, vectors, settings).map(|subspace| Block {
                subspace,
                assignment,
            })
        })
        .collect::<Result<_>>()?;

    Ok(JointEigenstructure {
        ambient_dim: dim,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin;

    fn s() -> Settings {
        Settings::default()
    }

    fn b(name: &str) -> Projector {
        spin::builtin_projector(name).unwrap()
    }

    #[test]
    fn commutation_of_spin_projectors() {
        assert!(commutes(&b("z+"), &b("z-"), &s()).unwrap());
        assert!(!commutes(&b("z+"), &b("x+"), &s()).unwrap());
        assert!(commutes(&b("x+"), &b("x+"), &s()).unwrap());
        assert!(matches!(
            commutes(&b("x+"), &Projector::identity(3), &s()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn context_construction() {
        let oz = make_context([("z+", b("z+")), ("z-", b("z-"))], &s()).unwrap();
        assert!(oz.is_orthogonal());
        assert_eq!(oz.orthogonal("z-", "z+"), Some(true));

        match make_context([("z+", b("z+")), ("x+", b("x+"))], &s()) {
            Err(Error::NonCommuting { pair: Some((a, c)), .. }) => {
                assert_eq!((a.as_str(), c.as_str()), ("z+", "x+"))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            make_context([("a", Projector::identity(2))], &s()),
            Err(Error::TrivialMember(l)) if l == "a"
        ));
        assert!(matches!(
            make_context(Vec::<(String, Projector)>::new(), &s()),
            Err(Error::EmptyContext)
        ));
        assert!(matches!(
            make_context([("a", b("z+")), ("a", b("z-"))], &s()),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn meet_join_xjoin_on_x_context() {
        let (xp, xm) = (b("x+"), b("x-"));
        let zero = Projector::zero(2);
        let one = Projector::identity(2);
        let e = s().eps_alg;
        assert!(meet(&xp, &xm, &s()).unwrap().approx_eq(&zero, e));
        assert!(join(&xp, &xm, &s()).unwrap().approx_eq(&one, e));
        assert!(xjoin(&xp, &xm, &s()).unwrap().approx_eq(&one, e));

        let zp = b("z+");
        assert!(meet(&zp, &one, &s()).unwrap().approx_eq(&zp, e));
        assert!(meet(&zp, &zp, &s()).unwrap().approx_eq(&zp, e));
        assert!(join(&zp, &zero, &s()).unwrap().approx_eq(&zp, e));
        assert!(join(&zp, &zp, &s()).unwrap().approx_eq(&zp, e));
        assert!(xjoin(&zp, &zp, &s()).unwrap().approx_eq(&zero, e));
        assert!(xjoin(&zp, &zero, &s()).unwrap().approx_eq(&zp, e));

        assert!(matches!(
            meet(&zp, &xp, &s()),
            Err(Error::NonCommuting { pair: None, .. })
        ));
        assert!(join(&zp, &xp, &s()).is_err());
        assert!(xjoin(&zp, &xp, &s()).is_err());
    }

    #[test]
    fn complement_identities() {
        let e = s().eps_alg;
        assert!(complement(&b("x+")).approx_eq(&b("x-"), e));
        assert!(complement(&Projector::identity(2)).approx_eq(&Projector::zero(2), e));
        let p = b("y+");
        assert!(complement(&complement(&p)).approx_eq(&p, e));
        assert_eq!(complement(&p).rank(), 1);
    }

    #[test]
    fn partial_order() {
        let zp = b("z+");
        assert!(leq(&zp, &complement(&b("z-")), &s()).unwrap());
        assert!(!leq(&Projector::identity(2), &zp, &s()).unwrap());
        assert!(leq(&Projector::zero(2), &zp, &s()).unwrap());
        assert!(leq(&zp, &zp, &s()).unwrap());
        assert!(leq(&zp, &b("x+"), &s()).is_err());
    }

    #[test]
    fn joint_eigenstructure_of_x_context() {
        let ox = make_context([("x+", b("x+")), ("x-", b("x-"))], &s()).unwrap();
        let je = ox.joint_eigenstructure(&s()).unwrap();
        assert_eq!(je.blocks.len(), 2);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for block in &je.blocks {
            assert_eq!(block.subspace.dim(), 1);
            let v = &block.subspace.basis()[0];
            let sign = if block.assignment["x+"] { 1.0 } else { -1.0 };
            assert_ne!(block.assignment["x+"], block.assignment["x-"]);
            let overlap = v[0].conj() * h + v[1].conj() * (sign * h);
            assert!((overlap.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn joint_eigenstructure_single_member() {
        let ctx = make_context([("z+", b("z+"))], &s()).unwrap();
        let je = ctx.joint_eigenstructure(&s()).unwrap();
        assert_eq!(je.blocks.len(), 2);
        let up = je.blocks.iter().find(|b| b.assignment["z+"]).unwrap();
        assert!((up.subspace.basis()[0][0].norm() - 1.0).abs() < 1e-12);
        let rebuilt = je.reconstruct(|a| a["z+"]);
        assert!(rebuilt.max_abs_diff(b("z+").matrix()) < 1e-12);
    }
}
