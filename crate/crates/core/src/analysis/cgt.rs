//! One-step activation statistics and a necessary condition for
//! representability by a correlated threshold model.
//!
//! In a correlated threshold model, started from seed `s`, a target `v ∉ s`
//! is active at step 1 exactly on the event `{θ_v ≤ f_v(s)}`. For two seeds
//! these events are nested one way or the other, and whichever has the larger
//! probability contains the other up to a null set (a seeded target's event
//! is everything). So if both targets are at least as likely under `s` as
//! under `s'`, the joint event under `s` contains the joint event under `s'`
//! and `pair(s) ≥ pair(s')`. A model whose statistics break this cannot be a
//! correlated threshold model, whatever its thresholds' joint law.

use std::collections::BTreeMap;

use crate::analysis::exact::SequenceDistribution;
use crate::dist::FiniteSupportDistribution;
use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph};
use crate::models::CorrelatedShdModel;
use crate::nodes::{NodeSet, NodeUniverse};
use crate::prob::Probability;

/// Marginal and pairwise activation probabilities by step 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneStepStats {
    pub seed: NodeSet,
    pub targets: Vec<usize>,
    pub single: BTreeMap<usize, Probability>,
    /// Keyed by `(u, v)` with `u < v`.
    pub pair: BTreeMap<(usize, usize), Probability>,
}

impl OneStepStats {
    pub fn single(&self, v: usize) -> Option<&Probability> {
        self.single.get(&v)
    }

    pub fn pair(&self, u: usize, v: usize) -> Option<&Probability> {
        self.pair.get(&(u.min(v), u.max(v)))
    }
}

pub fn one_step_statistics(dist: &SequenceDistribution, targets: &[usize]) -> Result<OneStepStats> {
    let n = dist.node_count();
    let mut t: Vec<usize> = targets.to_vec();
    t.sort_unstable();
    t.dedup();
    if let Some(&bad) = t.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidArgument(format!("target {bad} is not in the {n}-node universe")));
    }
    let mut single: BTreeMap<usize, Probability> = t.iter().map(|&v| (v, Probability::zero())).collect();
    let mut pair = BTreeMap::new();
    for (i, &u) in t.iter().enumerate() {
        for &v in &t[i + 1..] {
            pair.insert((u, v), Probability::zero());
        }
    }
    for (seq, p) in dist.entries() {
        let s1 = seq.at(1);
        for (v, acc) in single.iter_mut() {
            if s1.contains(*v) {
                *acc += p;
            }
        }
        for ((u, v), acc) in pair.iter_mut() {
            if s1.contains(*u) && s1.contains(*v) {
                *acc += p;
            }
        }
    }
    Ok(OneStepStats {
        seed: dist.seed(),
        targets: t,
        single,
        pair,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivationTriple {
    pub seed: NodeSet,
    pub first: Probability,
    pub second: Probability,
    pub both: Probability,
}

/// Proof that no correlated threshold model reproduces two seeds' statistics:
/// `dominant` activates each target at least as often as `dominated` (one
/// strictly), yet activates both together strictly less often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgtCertificate {
    pub targets: (usize, usize),
    pub dominant: ActivationTriple,
    pub dominated: ActivationTriple,
}

impl CgtCertificate {
    pub fn violated_inequality(&self) -> String {
        format!(
            "{} = Pr[both | dominant seed] ≥ Pr[both | dominated seed] = {} fails",
            self.dominant.both, self.dominated.both
        )
    }
}

fn triple(stats: &OneStepStats, v1: usize, v2: usize) -> Result<ActivationTriple> {
    let missing = || Error::InvalidArgument(format!("statistics for seed {:?} lack targets {v1}, {v2}", stats.seed));
    Ok(ActivationTriple {
        seed: stats.seed,
        first: stats.single(v1).ok_or_else(missing)?.clone(),
        second: stats.single(v2).ok_or_else(missing)?.clone(),
        both: stats.pair(v1, v2).ok_or_else(missing)?.clone(),
    })
}

fn dominates(hi: &ActivationTriple, lo: &ActivationTriple) -> bool {
    hi.first >= lo.first && hi.second >= lo.second && (hi.first > lo.first || hi.second > lo.second) && hi.both < lo.both
}

/// Checks both orientations of the nesting condition; `None` means the
/// statistics are consistent with some correlated threshold model as far as
/// this condition can tell.
pub fn cgt_violation_certificate(
    stats1: &OneStepStats,
    stats2: &OneStepStats,
    v1: usize,
    v2: usize,
) -> Result<Option<CgtCertificate>> {
    if v1 == v2 {
        return Err(Error::InvalidArgument("the two targets must differ".into()));
    }
    let (a, b) = (triple(stats1, v1, v2)?, triple(stats2, v1, v2)?);
    let cert = if dominates(&a, &b) {
        Some((a, b))
    } else if dominates(&b, &a) {
        Some((b, a))
    } else {
        None
    };
    Ok(cert.map(|(dominant, dominated)| CgtCertificate {
        targets: (v1, v2),
        dominant,
        dominated,
    }))
}

/// Four nodes `u1, u2, v1, v2`. `u1` points to exactly one of `v1`, `v2`
/// (½ each); independently, `u2` points to both with probability 1/10 and to
/// neither otherwise. Stored as the four-atom joint law over hypergraphs.
pub fn reverse_triggering_fixture() -> CorrelatedShdModel {
    const U1: usize = 0;
    const U2: usize = 1;
    const V1: usize = 2;
    const V2: usize = 3;
    let universe = NodeUniverse::new(["u1", "u2", "v1", "v2"]).expect("static labels");
    let edge = |u: usize, v: usize| Hyperedge {
        head: v,
        tail: NodeSet::singleton(u),
    };
    let half = Probability::new(1, 2).expect("static");
    let u1_choices = [(half.clone(), vec![edge(U1, V1)]), (half, vec![edge(U1, V2)])];
    let u2_choices = [
        (Probability::new(1, 10).expect("static"), vec![edge(U2, V1), edge(U2, V2)]),
        (Probability::new(9, 10).expect("static"), vec![]),
    ];
    let mut atoms = Vec::with_capacity(4);
    for (p1, e1) in &u1_choices {
        for (p2, e2) in &u2_choices {
            let g = Hypergraph::from_edges_unchecked(4, e1.iter().chain(e2).copied());
            atoms.push((p1 * p2, g));
        }
    }
    CorrelatedShdModel {
        universe,
        graphs: FiniteSupportDistribution::new(atoms),
    }
}
