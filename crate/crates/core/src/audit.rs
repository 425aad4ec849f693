//! Batch law audits over random (projector, state) samples.
//!
//! Every trial draws from its own `(seed, dim, index)` stream, so results are
//! identical whether trials run sequentially or across the rayon pool.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::logic::Binding;
use crate::sampling::{random_projector, random_state, random_state_in, seeded_rng};
use crate::valuation::{check_law, Law, LawVerdict, TruthStatus};
use crate::{Result, Settings};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise
    /// falls back to sequential.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Maps `f` over `0..n`, collecting results in index order.
pub fn batch_map<T, F>(n: usize, exec: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimTally {
    pub dim: usize,
    pub trials: usize,
    pub excluded_middle_true: usize,
    pub non_contradiction_false: usize,
    pub distributivity: BTreeMap<LawVerdict, usize>,
    /// Trial indices where excluded middle or non-contradiction failed.
    pub failures: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditSummary {
    pub seed: u64,
    pub trials_per_dim: usize,
    pub dims: Vec<DimTally>,
}

impl AuditSummary {
    /// True iff every excluded-middle sample was True and every
    /// non-contradiction sample False.
    pub fn laws_hold(&self) -> bool {
        self.dims.iter().all(|d| {
            d.excluded_middle_true == d.trials && d.non_contradiction_false == d.trials
        })
    }
}

struct Trial {
    excluded_middle: bool,
    non_contradiction: bool,
    distributivity: LawVerdict,
}

fn stream(dim: usize, index: usize) -> u64 {
    ((dim as u64) << 32) | index as u64
}

/// One sample: a random nontrivial projector and random state for the
/// single-atom laws, then a second projector and a state inside the range
/// of the first for distributivity.
fn run_trial(dim: usize, index: usize, seed: u64, settings: &Settings) -> Result<Trial> {
    let mut rng = seeded_rng(seed, stream(dim, index));
    let p = random_projector(dim, &mut rng, settings)?;
    let v = random_state(dim, &mut rng, settings)?;
    let single = Binding::new(dim).with("a", p.clone())?;
    let em = check_law(Law::ExcludedMiddle, &v, &single, &["a"], settings)?;
    let nc = check_law(Law::NonContradiction, &v, &single, &["a"], settings)?;

    let q = random_projector(dim, &mut rng, settings)?;
    let w = random_state_in(p.range_basis(), &mut rng, settings)?;
    let pair = Binding::new(dim).with("z", p)?.with("x", q)?;
    let dist = check_law(Law::Distributivity, &w, &pair, &["z", "x"], settings)?;

    Ok(Trial {
        excluded_middle: em.status() == Some(TruthStatus::True) && em.verdict == LawVerdict::Holds,
        non_contradiction: nc.status() == Some(TruthStatus::False) && nc.verdict == LawVerdict::Holds,
        distributivity: dist.verdict,
    })
}

pub fn run_law_audit(
    dims: &[usize],
    trials: usize,
    seed: u64,
    settings: &Settings,
    exec: Execution,
) -> Result<AuditSummary> {
    let dims = dims
        .iter()
        .map(|&dim| {
            let results = batch_map(trials, exec, |i| run_trial(dim, i, seed, settings))?;
            let mut tally = DimTally {
                dim,
                trials,
                excluded_middle_true: 0,
                non_contradiction_false: 0,
                distributivity: BTreeMap::new(),
                failures: Vec::new(),
            };
            for (i, t) in results.into_iter().enumerate() {
                tally.excluded_middle_true += t.excluded_middle as usize;
                tally.non_contradiction_false += t.non_contradiction as usize;
                *tally.distributivity.entry(t.distributivity).or_default() += 1;
                if !(t.excluded_middle && t.non_contradiction) {
                    tally.failures.push(i);
                }
            }
            Ok(tally)
        })
        .collect::<Result<_>>()?;
    Ok(AuditSummary {
        seed,
        trials_per_dim: trials,
        dims,
    })
}
