use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::models::Model;
use crate::nodes::NodeSet;
use crate::sample::Sampler;
use crate::sequence::ProgressiveSequence;

/// Observed sequence counts from independent seeded trials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    n: usize,
    seed: NodeSet,
    trials: u64,
    counts: BTreeMap<ProgressiveSequence, u64>,
}

impl EmpiricalDistribution {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> NodeSet {
        self.seed
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn counts(&self) -> &BTreeMap<ProgressiveSequence, u64> {
        &self.counts
    }

    pub fn frequency(&self, seq: &ProgressiveSequence) -> f64 {
        self.counts.get(seq).map_or(0.0, |&c| c as f64 / self.trials as f64)
    }

    pub fn frequencies(&self) -> impl Iterator<Item = (&ProgressiveSequence, f64)> {
        let t = self.trials as f64;
        self.counts.iter().map(move |(s, &c)| (s, c as f64 / t))
    }
}

/// Monte-Carlo estimate of the sequence law from `seed`.
///
/// Trial `i` uses the streams of `(rng_seed, i)`, so the result does not
/// depend on how trials are scheduled across threads.
pub fn mc_estimate(model: &Model, seed: NodeSet, trials: u64, rng_seed: u64) -> Result<EmpiricalDistribution> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let sampler = Sampler::new(model);
    // validates the seed once before fanning out
    sampler.run(seed, rng_seed, 0)?;
    let counts = (0..trials)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<ProgressiveSequence, u64>, i| {
            let seq = sampler.run(seed, rng_seed, i).expect("seed validated above");
            *acc.entry(seq).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(EmpiricalDistribution {
        n: model.node_count(),
        seed,
        trials,
        counts,
    })
}
