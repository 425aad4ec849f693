//! Independent oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::DVector;
use qsv_core::hilbert::{ComplexMatrix, StateVector, C64};
use qsv_core::lattice::{make_context, Context, JointEigenstructure};
use qsv_core::logic::{Binding, Formula};
use qsv_core::sampling::{random_commuting_family, random_state, random_state_in};
use qsv_core::valuation::TruthStatus;
use qsv_core::Settings;
use rand::Rng;

pub const ATOMS: [&str; 4] = ["a", "b", "c", "d"];

/// Random commuting context of `size` members labelled a, b, ... and the
/// matching binding.
pub fn random_context<R: Rng>(rng: &mut R, dim: usize, size: usize, s: &Settings) -> (Context, Binding) {
    let family = random_commuting_family(dim, size, rng, s).unwrap();
    let mut binding = Binding::new(dim);
    for (name, p) in ATOMS.iter().zip(&family) {
        binding.insert(*name, p.clone()).unwrap();
    }
    let ctx = make_context(ATOMS.iter().copied().zip(family), s).unwrap();
    (ctx, binding)
}

/// Sum of block projectors whose bit assignment makes `f` classically true.
pub fn block_reconstruction(je: &JointEigenstructure, f: &Formula) -> ComplexMatrix {
    je.reconstruct(|bits| f.eval_classical(&|a: &str| bits[a]))
}

/// Supervaluation status read off the blocks: True when the state has no
/// weight on classically-false blocks, False when none on true blocks.
pub fn block_status(je: &JointEigenstructure, f: &Formula, v: &StateVector, eps: f64) -> TruthStatus {
    let (mut on_true, mut on_false) = (0.0, 0.0);
    for block in &je.blocks {
        let weight: f64 = block
            .subspace
            .basis()
            .iter()
            .map(|b| b.dotc(v.amplitudes()).norm_sqr())
            .sum();
        if f.eval_classical(&|a: &str| block.assignment[a]) {
            on_true += weight;
        } else {
            on_false += weight;
        }
    }
    if on_false.sqrt() <= eps {
        TruthStatus::True
    } else if on_true.sqrt() <= eps {
        TruthStatus::False
    } else {
        TruthStatus::Gap
    }
}

/// Generic state, a state inside one block, or one spanning two blocks.
pub fn state_for<R: Rng>(rng: &mut R, je: &JointEigenstructure, s: &Settings) -> StateVector {
    let n = je.blocks.len();
    match rng.random_range(0..3) {
        0 => random_state(je.ambient_dim, rng, s).unwrap(),
        1 => random_state_in(&je.blocks[rng.random_range(0..n)].subspace, rng, s).unwrap(),
        _ => {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            let mut v = DVector::<C64>::zeros(je.ambient_dim);
            for k in [i, j] {
                let u = random_state_in(&je.blocks[k].subspace, rng, s).unwrap();
                v += u.amplitudes();
            }
            if v.norm() < 1e-6 {
                random_state(je.ambient_dim, rng, s).unwrap()
            } else {
                StateVector::normalized(v.iter().copied().collect(), s).unwrap()
            }
        }
    }
}

/// Common eigenvectors of diagonal 0/1 projectors, found by grouping the
/// standard basis vectors by their diagonal bit patterns.
pub fn brute_force_blocks(diagonals: &[Vec<bool>]) -> BTreeMap<Vec<bool>, Vec<usize>> {
    let dim = diagonals[0].len();
    let mut groups: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for k in 0..dim {
        let bits: Vec<bool> = diagonals.iter().map(|d| d[k]).collect();
        groups.entry(bits).or_default().push(k);
    }
    groups
}

pub fn diagonal(bits: &[bool]) -> ComplexMatrix {
    let dim = bits.len();
    let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
    for (k, &b) in bits.iter().enumerate() {
        if b {
            entries[k * dim + k] = C64::new(1.0, 0.0);
        }
    }
    ComplexMatrix::new(dim, entries).unwrap()
}

pub fn hermitian_residual(m: &ComplexMatrix) -> f64 {
    m.max_abs_diff(&m.adjoint())
}

pub fn idempotent_residual(m: &ComplexMatrix) -> f64 {
    (m * m).max_abs_diff(m)
}
