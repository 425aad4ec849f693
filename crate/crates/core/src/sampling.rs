//! Seeded random projectors, states, commuting families and formulas.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::hilbert::{ComplexMatrix, Projector, StateVector, Subspace, C64};
use crate::logic::Formula;
use crate::{Result, Settings};

/// Deterministic generator for `(seed, stream)`; distinct streams are independent.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<C64> {
    DVector::from_fn(dim, |_, _| gaussian(rng))
}

/// Haar-like unitary from Gram-Schmidt orthonormalization of a complex
/// Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<C64> {
    let mut cols: Vec<DVector<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v = gaussian_vector(dim, rng);
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for c in &cols {
                let proj = c.dotc(&v);
                v -= c * proj;
            }
        }
        let norm = v.norm();
        if norm > 1e-8 {
            cols.push(v.unscale(norm));
        }
    }
    DMatrix::from_columns(&cols)
}

/// 0/1 pattern with at least one of each when `dim ≥ 2`.
pub fn nontrivial_pattern<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<bool> {
    assert!(dim >= 2, "nontrivial projectors need dim ≥ 2");
    loop {
        let pattern: Vec<bool> = (0..dim).map(|_| rng.random_bool(0.5)).collect();
        if pattern.iter().any(|&b| b) && pattern.iter().any(|&b| !b) {
            return pattern;
        }
    }
}

/// `U diag(pattern) U†`.
pub fn projector_in_basis(u: &DMatrix<C64>, pattern: &[bool], settings: &Settings) -> Result<Projector> {
    let dim = u.nrows();
    let mut m = DMatrix::zeros(dim, dim);
    for (k, _) in pattern.iter().enumerate().filter(|(_, &b)| b) {
        let c = u.column(k);
        m += c * c.adjoint();
    }
    Projector::validate(ComplexMatrix::from_dmatrix(m), settings)
}

/// Random projector that is neither 0̂ nor 1̂.
pub fn random_projector<R: Rng + ?Sized>(dim: usize, rng: &mut R, settings: &Settings) -> Result<Projector> {
    let u = random_unitary(dim, rng);
    let pattern = nontrivial_pattern(dim, rng);
    projector_in_basis(&u, &pattern, settings)
}

/// `count` nontrivial projectors diagonal in one shared random basis.
pub fn random_commuting_family<R: Rng + ?Sized>(
    dim: usize,
    count: usize,
    rng: &mut R,
    settings: &Settings,
) -> Result<Vec<Projector>> {
    let u = random_unitary(dim, rng);
    (0..count)
        .map(|_| {
            let pattern = nontrivial_pattern(dim, rng);
            projector_in_basis(&u, &pattern, settings)
        })
        .collect()
}

pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R, settings: &Settings) -> Result<StateVector> {
    StateVector::normalized(gaussian_vector(dim, rng).iter().copied().collect(), settings)
}

/// Random normalized vector in the span of `sub`, which must be nonempty.
pub fn random_state_in<R: Rng + ?Sized>(sub: &Subspace, rng: &mut R, settings: &Settings) -> Result<StateVector> {
    assert!(!sub.is_empty(), "cannot sample from the zero subspace");
    let mut v = DVector::zeros(sub.ambient_dim());
    for b in sub.basis() {
        v += b * gaussian(rng);
    }
    StateVector::normalized(v.iter().copied().collect(), settings)
}

/// Random formula over `atoms` with depth at most `max_depth`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, atoms: &[&str], max_depth: usize) -> Formula {
    assert!(!atoms.is_empty() && max_depth >= 1);
    if max_depth == 1 || rng.random_bool(0.25) {
        return Formula::atom(atoms[rng.random_range(0..atoms.len())]);
    }
    let sub = max_depth - 1;
    match rng.random_range(0..4) {
        0 => Formula::not(random_formula(rng, atoms, sub)),
        1 => Formula::and(random_formula(rng, atoms, sub), random_formula(rng, atoms, sub)),
        2 => Formula::or(random_formula(rng, atoms, sub), random_formula(rng, atoms, sub)),
        _ => Formula::xor(random_formula(rng, atoms, sub), random_formula(rng, atoms, sub)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::commutes;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = seeded_rng(7, 0);
        for dim in 1..=5 {
            let u = random_unitary(dim, &mut rng);
            let err = (u.adjoint() * &u - DMatrix::<C64>::identity(dim, dim))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-12, "dim {dim}: {err}");
        }
    }

    #[test]
    fn samples_are_valid_and_reproducible() {
        let s = Settings::default();
        let mut a = seeded_rng(1, 3);
        let mut b = seeded_rng(1, 3);
        let p = random_projector(4, &mut a, &s).unwrap();
        let q = random_projector(4, &mut b, &s).unwrap();
        assert_eq!(p.matrix(), q.matrix());
        assert!(!p.is_zero() && !p.is_identity());

        let fam = random_commuting_family(3, 4, &mut a, &s).unwrap();
        for x in &fam {
            for y in &fam {
                assert!(commutes(x, y, &s).unwrap());
            }
        }
        let v = random_state_in(p.range_basis(), &mut a, &s).unwrap();
        assert!(p.range_basis().distance(&v).unwrap() < 1e-12);
    }

    #[test]
    fn formulas_respect_depth() {
        let mut rng = seeded_rng(2, 0);
        for _ in 0..200 {
            assert!(random_formula(&mut rng, &["a", "b"], 6).depth() <= 6);
        }
    }
}
