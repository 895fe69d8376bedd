use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::config::Structure;
use crate::error::{Error, Result};
use crate::models::{Model, SbfdModel};
use crate::nodes::NodeSet;
use crate::prob::Probability;
use crate::sequence::{check_progressive, ProgressiveSequence};
use crate::transform::to_sbfd;

/// Default cap on the number of configurations an exact run may enumerate.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Exact law of the progressive sequence generated from one seed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDistribution {
    n: usize,
    seed: NodeSet,
    entries: BTreeMap<ProgressiveSequence, Probability>,
}

impl SequenceDistribution {
    pub fn new(n: usize, seed: NodeSet, entries: BTreeMap<ProgressiveSequence, Probability>) -> Self {
        SequenceDistribution { n, seed, entries }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> NodeSet {
        self.seed
    }

    pub fn entries(&self) -> &BTreeMap<ProgressiveSequence, Probability> {
        &self.entries
    }

    /// Zero for sequences outside the support.
    pub fn probability(&self, seq: &ProgressiveSequence) -> Probability {
        self.entries.get(seq).cloned().unwrap_or_else(Probability::zero)
    }

    pub fn total(&self) -> Probability {
        self.entries.values().sum()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }
}

fn check_seeds(model: &Model, seeds: &[NodeSet]) -> Result<()> {
    for &s in seeds {
        if s.is_empty() {
            return Err(Error::EmptySeed);
        }
        model.universe().check(s)?;
    }
    Ok(())
}

/// Number of configurations an exact run over `model` enumerates.
pub fn configuration_count(model: &Model) -> u128 {
    Structure::of(model)
        .atom_counts()
        .into_iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c as u128))
}

/// Exact distribution for one seed set. See [`exact_distributions`].
pub fn exact_distribution(model: &Model, seed: NodeSet, budget: u128) -> Result<SequenceDistribution> {
    Ok(exact_distributions(model, &[seed], budget)?.remove(0))
}

/// Exact distributions for several seed sets in one pass over the support.
///
/// Node-independent models enumerate the product of their per-node atoms;
/// correlated models enumerate their joint atoms. The threshold model is
/// enumerated over threshold cells: on each cell every comparison
/// `f_v(S) ≥ θ_v` is fixed, so one representative threshold per cell runs
/// the fixed-threshold diffusion and carries the cell's length as mass.
pub fn exact_distributions(model: &Model, seeds: &[NodeSet], budget: u128) -> Result<Vec<SequenceDistribution>> {
    check_seeds(model, seeds)?;
    let needed = configuration_count(model);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let n = model.node_count();
    let structure = Structure::of(model);
    let counts = structure.atom_counts();

    let enumerate_from = |first: usize| -> Vec<BTreeMap<ProgressiveSequence, Probability>> {
        let mut acc = vec![BTreeMap::new(); seeds.len()];
        let mut choice = vec![0usize; counts.len()];
        choice[0] = first;
        let mass = structure.mass(0, first).clone();
        walk(&structure, &counts, 1, &mut choice, mass, &mut |choice, mass| {
            let config = structure.configure(choice);
            for (slot, &seed) in acc.iter_mut().zip(seeds) {
                let seq = config.run(seed, n);
                *slot.entry(seq).or_insert_with(Probability::zero) += mass;
            }
        });
        acc
    };

    // Exact addition commutes, so the merged maps do not depend on scheduling.
    let partials: Vec<_> = (0..counts[0]).into_par_iter().map(enumerate_from).collect();
    let mut merged = vec![BTreeMap::<ProgressiveSequence, Probability>::new(); seeds.len()];
    for part in partials {
        for (dst, src) in merged.iter_mut().zip(part) {
            for (seq, p) in src {
                *dst.entry(seq).or_insert_with(Probability::zero) += &p;
            }
        }
    }
    Ok(merged
        .into_iter()
        .zip(seeds)
        .map(|(entries, &seed)| SequenceDistribution { n, seed, entries })
        .collect())
}

fn walk(
    structure: &Structure<'_>,
    counts: &[usize],
    depth: usize,
    choice: &mut Vec<usize>,
    mass: Probability,
    visit: &mut dyn FnMut(&[usize], &Probability),
) {
    if depth == counts.len() {
        visit(choice, &mass);
        return;
    }
    for i in 0..counts[depth] {
        choice[depth] = i;
        let m = &mass * structure.mass(depth, i);
        walk(structure, counts, depth + 1, choice, m, visit);
    }
}

/// `Pr{g_v(S) = 1}` under node `v`'s function distribution.
pub fn activation_probability(model: &SbfdModel, v: usize, s: NodeSet) -> Probability {
    model.functions[v].iter().filter(|(_, g)| g.eval(s)).map(|(p, _)| p).sum()
}

/// Closed-form probability of `seq` under a node-independent Boolean-function
/// model, from set-node activation probabilities alone:
///
/// `∏_{t=1}^{n-1} ∏_{v ∈ S_t∖S_{t-1}} (p_v(S_{t-1}) - p_v(S_{t-2}))
///  · ∏_{v ∉ S_{n-1}} (1 - p_v(S_{n-2}))`, with `S_{-1} = ∅`.
pub fn sequence_probability(model: &SbfdModel, seq: &ProgressiveSequence) -> Result<Probability> {
    let n = model.universe.len();
    check_progressive(seq.sets(), n)?;
    let mut prob = Probability::one();
    for t in 1..n as isize {
        let fresh = seq.at(t).difference(seq.at(t - 1));
        for v in fresh.iter() {
            let now = activation_probability(model, v, seq.at(t - 1));
            let before = activation_probability(model, v, seq.at(t - 2));
            prob = prob * (now - before);
            if prob.is_zero() {
                return Ok(prob);
            }
        }
    }
    let last = n as isize - 1;
    for v in seq.at(last).complement(n).iter() {
        prob = prob * activation_probability(model, v, seq.at(last - 1)).complement();
    }
    Ok(prob)
}

/// [`sequence_probability`] for any node-independent model.
pub fn sequence_probability_of(model: &Model, seq: &ProgressiveSequence) -> Result<Probability> {
    if !model.kind().is_node_independent() {
        return Err(Error::RequiresNodeIndependent("sequence_probability"));
    }
    sequence_probability(&to_sbfd(model)?, seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::GeneralThresholdModel;
    use crate::nodes::NodeUniverse;
    use crate::threshold::ThresholdTable;
    use crate::transform::gt_to_sbfd;

    fn p(x: &str) -> Probability {
        Probability::parse(x).unwrap()
    }

    fn two_node_gt() -> Model {
        GeneralThresholdModel::new(
            NodeUniverse::new(["a", "b"]).unwrap(),
            vec![
                ThresholdTable::new(0),
                ThresholdTable::from_entries(1, [(NodeSet::singleton(0), p("1/2"))]),
            ],
        )
        .unwrap()
        .into()
    }

    fn seq(sets: &[&[usize]]) -> ProgressiveSequence {
        let n = sets.len();
        ProgressiveSequence::new(sets.iter().map(|s| NodeSet::from_indices(s.iter().copied())).collect(), n).unwrap()
    }

    #[test]
    fn two_node_gt_splits_evenly() {
        let d = exact_distribution(&two_node_gt(), NodeSet::singleton(0), DEFAULT_BUDGET).unwrap();
        assert_eq!(d.support_len(), 2);
        assert_eq!(d.probability(&seq(&[&[0], &[0, 1]])), p("1/2"));
        assert_eq!(d.probability(&seq(&[&[0], &[0]])), p("1/2"));
        assert!(d.total().is_one());
    }

    #[test]
    fn full_seed_is_point_mass() {
        let d = exact_distribution(&two_node_gt(), NodeSet::full(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(d.support_len(), 1);
        assert!(d.probability(&ProgressiveSequence::constant(NodeSet::full(2), 2)).is_one());
    }

    #[test]
    fn closed_form_matches_on_small_example() {
        let Model::Gt(gt) = two_node_gt() else { unreachable!() };
        let sb = gt_to_sbfd(&gt).unwrap();
        assert_eq!(sequence_probability(&sb, &seq(&[&[0], &[0, 1]])).unwrap(), p("1/2"));
        assert!(sequence_probability(&sb, &ProgressiveSequence::constant(NodeSet::full(2), 2)).unwrap().is_one());
    }

    #[test]
    fn budget_is_enforced() {
        let err = exact_distribution(&two_node_gt(), NodeSet::singleton(0), 1).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed: 2, budget: 1 }));
        assert!(matches!(
            exact_distribution(&two_node_gt(), NodeSet::EMPTY, DEFAULT_BUDGET),
            Err(Error::EmptySeed)
        ));
    }
}
