use std::collections::BTreeMap;

use crate::analysis::exact::{exact_distributions, SequenceDistribution};
use crate::analysis::mc::{mc_estimate, EmpiricalDistribution};
use crate::error::{Error, Result};
use crate::models::Model;
use crate::nodes::{nonempty_subsets, NodeSet};
use crate::prob::Probability;
use crate::sequence::ProgressiveSequence;
use crate::transform::MAX_ENUMERATION_NODES;

/// Anything that assigns weights to sequences from a fixed seed.
pub trait SequenceWeights {
    fn seed(&self) -> NodeSet;
    fn node_count(&self) -> usize;
    fn weights(&self) -> BTreeMap<&ProgressiveSequence, f64>;
}

impl SequenceWeights for SequenceDistribution {
    fn seed(&self) -> NodeSet {
        SequenceDistribution::seed(self)
    }
    fn node_count(&self) -> usize {
        SequenceDistribution::node_count(self)
    }
    fn weights(&self) -> BTreeMap<&ProgressiveSequence, f64> {
        self.entries().iter().map(|(s, p)| (s, p.to_f64())).collect()
    }
}

impl SequenceWeights for EmpiricalDistribution {
    fn seed(&self) -> NodeSet {
        EmpiricalDistribution::seed(self)
    }
    fn node_count(&self) -> usize {
        EmpiricalDistribution::node_count(self)
    }
    fn weights(&self) -> BTreeMap<&ProgressiveSequence, f64> {
        self.frequencies().collect()
    }
}

/// `½ Σ |a(s) - b(s)|` over the union of supports.
pub fn tv_distance(a: &impl SequenceWeights, b: &impl SequenceWeights) -> Result<f64> {
    if a.seed() != b.seed() || a.node_count() != b.node_count() {
        return Err(Error::InvalidArgument(format!(
            "distributions are for different seeds ({:?} vs {:?})",
            a.seed(),
            b.seed()
        )));
    }
    Ok(abs_differences(&a.weights(), &b.weights()).map(|(_, d)| d).sum::<f64>() / 2.0)
}

/// `|a(s) - b(s)|` over the union of supports, in sequence order, so sums are
/// symmetric in `a` and `b` bit for bit.
fn abs_differences<'a>(
    a: &'a BTreeMap<&'a ProgressiveSequence, f64>,
    b: &'a BTreeMap<&'a ProgressiveSequence, f64>,
) -> impl Iterator<Item = (&'a ProgressiveSequence, f64)> + 'a {
    let keys: std::collections::BTreeSet<&'a ProgressiveSequence> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter().map(move |k| {
        let (x, y) = (a.get(k).copied().unwrap_or(0.0), b.get(k).copied().unwrap_or(0.0));
        (k, (x - y).abs())
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum CompareMode {
    /// Rational equality of every sequence probability.
    Exact { budget: u128 },
    /// Total-variation distance between two estimates, against `tolerance`.
    MonteCarlo { trials: u64, rng_seed: u64, tolerance: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Exact(Probability),
    Frequency(f64),
}

/// A sequence whose weight differs between the two models.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub sequence: ProgressiveSequence,
    pub left: Weight,
    pub right: Weight,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeedVerdict {
    pub seed: NodeSet,
    pub pass: bool,
    /// Total-variation distance (Monte-Carlo mode only).
    pub tv: Option<f64>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub mode: CompareMode,
    pub verdicts: Vec<SeedVerdict>,
    /// True when every nonempty seed set was checked.
    pub exhaustive: bool,
}

impl EquivalenceReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Full equivalence is only claimed after checking every seed set.
    pub fn equivalent(&self) -> bool {
        self.exhaustive && self.all_passed()
    }

    pub fn first_failure(&self) -> Option<&SeedVerdict> {
        self.verdicts.iter().find(|v| !v.pass)
    }
}

/// Compares the sequence laws of two models seed by seed.
///
/// `seeds = None` checks all `2^n - 1` nonempty seed sets (refused for
/// `n > 20`; pass an explicit list instead).
pub fn equivalence_report(a: &Model, b: &Model, mode: CompareMode, seeds: Option<&[NodeSet]>) -> Result<EquivalenceReport> {
    if a.universe().names() != b.universe().names() {
        return Err(Error::UniverseMismatch("models are over different node lists".into()));
    }
    let n = a.node_count();
    let all: Vec<NodeSet>;
    let seeds = match seeds {
        Some(s) => s,
        None => {
            if n > MAX_ENUMERATION_NODES {
                return Err(Error::TooManyNodes {
                    what: "checking every seed set",
                    n,
                    limit: MAX_ENUMERATION_NODES,
                });
            }
            all = nonempty_subsets(n).collect();
            &all
        }
    };
    let distinct: std::collections::BTreeSet<NodeSet> = seeds.iter().copied().collect();
    let exhaustive = n < 64 && distinct.len() as u128 == (1u128 << n) - 1;

    let verdicts = match &mode {
        CompareMode::Exact { budget } => {
            let da = exact_distributions(a, seeds, *budget)?;
            let db = exact_distributions(b, seeds, *budget)?;
            da.iter().zip(&db).map(|(x, y)| exact_verdict(x, y)).collect()
        }
        CompareMode::MonteCarlo {
            trials,
            rng_seed,
            tolerance,
        } => seeds
            .iter()
            .map(|&s| {
                let ea = mc_estimate(a, s, *trials, *rng_seed)?;
                let eb = mc_estimate(b, s, *trials, *rng_seed)?;
                mc_verdict(&ea, &eb, *tolerance)
            })
            .collect::<Result<_>>()?,
    };
    Ok(EquivalenceReport {
        mode,
        verdicts,
        exhaustive,
    })
}

fn exact_verdict(a: &SequenceDistribution, b: &SequenceDistribution) -> SeedVerdict {
    let keys: std::collections::BTreeSet<&ProgressiveSequence> = a.entries().keys().chain(b.entries().keys()).collect();
    let witness = keys.into_iter().find_map(|k| {
        let (pa, pb) = (a.probability(k), b.probability(k));
        (pa != pb).then(|| Witness {
            sequence: k.clone(),
            left: Weight::Exact(pa),
            right: Weight::Exact(pb),
        })
    });
    SeedVerdict {
        seed: a.seed(),
        pass: witness.is_none(),
        tv: None,
        witness,
    }
}

fn mc_verdict(a: &EmpiricalDistribution, b: &EmpiricalDistribution, tolerance: f64) -> Result<SeedVerdict> {
    let tv = tv_distance(a, b)?;
    let (wa, wb) = (a.weights(), b.weights());
    let mut worst: Option<(&ProgressiveSequence, f64)> = None;
    for (k, d) in abs_differences(&wa, &wb) {
        if d > 0.0 && worst.is_none_or(|(_, w)| d > w) {
            worst = Some((k, d));
        }
    }
    let pass = tv <= tolerance;
    Ok(SeedVerdict {
        seed: a.seed(),
        pass,
        tv: Some(tv),
        witness: worst.filter(|_| !pass).map(|(k, _)| Witness {
            sequence: k.clone(),
            left: Weight::Frequency(a.frequency(k)),
            right: Weight::Frequency(b.frequency(k)),
        }),
    })
}
