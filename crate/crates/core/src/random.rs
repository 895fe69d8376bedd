//! Seeded random model generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::FiniteSupportDistribution;
use crate::dnf::{antichain_minimize, MonotoneDnf};
use crate::hypergraph::{Hyperedge, Hypergraph};
use crate::models::*;
use crate::nodes::{NodeSet, NodeUniverse};
use crate::prob::Probability;
use crate::threshold::{ThresholdTable, ThresholdVector};

/// Denominator of generated probabilities.
const GRID: i64 = 12;

pub struct ModelGenerator {
    rng: ChaCha8Rng,
    n: usize,
}

impl ModelGenerator {
    /// `n` must be between 1 and 16.
    pub fn new(n: usize, seed: u64) -> Self {
        assert!((1..=16).contains(&n), "generator supports 1..=16 nodes");
        ModelGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    fn universe(&self) -> NodeUniverse {
        NodeUniverse::numbered(self.n).expect("n is in range")
    }

    fn grid(&mut self, lo: i64, hi: i64) -> Probability {
        Probability::new(self.rng.random_range(lo..=hi), GRID).expect("within [0, 1]")
    }

    /// A nonempty subset of the nodes other than `owner`, each kept with probability ½.
    fn subset_without(&mut self, owner: usize, max_len: usize) -> Option<NodeSet> {
        let others: Vec<usize> = (0..self.n).filter(|&u| u != owner).collect();
        if others.is_empty() {
            return None;
        }
        let mut s = NodeSet::EMPTY;
        for &u in &others {
            if s.len() < max_len && self.rng.random_bool(0.5) {
                s.insert(u);
            }
        }
        if s.is_empty() {
            s.insert(others[self.rng.random_range(0..others.len())]);
        }
        Some(s)
    }

    /// `k` positive masses on the grid summing to 1 (fewer if the grid runs out).
    fn masses(&mut self, k: usize) -> Vec<Probability> {
        let k = k.clamp(1, GRID as usize);
        let mut cuts: Vec<i64> = Vec::new();
        while cuts.len() < k - 1 {
            let c = self.rng.random_range(1..GRID);
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
        cuts.sort_unstable();
        cuts.push(GRID);
        let mut prev = 0;
        cuts.into_iter()
            .map(|c| {
                let p = Probability::new(c - prev, GRID).expect("positive");
                prev = c;
                p
            })
            .collect()
    }

    fn dnf(&mut self, owner: usize) -> MonotoneDnf {
        let terms = self.rng.random_range(0..=3);
        let sets: Vec<NodeSet> = (0..terms).filter_map(|_| self.subset_without(owner, 3)).collect();
        antichain_minimize(owner, sets).expect("terms avoid the owner and are nonempty")
    }

    /// Monotone table: each stored set gets at least the value of every stored subset.
    pub fn threshold_table(&mut self, owner: usize) -> ThresholdTable {
        let mut t = ThresholdTable::new(owner);
        let entries = self.rng.random_range(0..=4);
        for _ in 0..entries {
            if let Some(s) = self.subset_without(owner, 3) {
                let floor = t.value(s);
                let lo = (floor.ratio() * num_rational::BigRational::from_integer(GRID.into()))
                    .ceil()
                    .to_integer();
                let lo: i64 = num_traits::ToPrimitive::to_i64(&lo).expect("small");
                let v = self.grid(lo.max(1), GRID);
                t.set(s, v);
            }
        }
        // raising an entry can undercut a stored superset; restore monotonicity
        let keys: Vec<NodeSet> = t.entries().keys().copied().collect();
        for s in keys {
            let v = t.value(s);
            t.set(s, v);
        }
        t
    }

    pub fn gt(&mut self) -> GeneralThresholdModel {
        let tables = (0..self.n).map(|v| self.threshold_table(v)).collect();
        GeneralThresholdModel::new(self.universe(), tables).expect("generated tables are valid")
    }

    pub fn triggering(&mut self) -> TriggeringModel {
        let triggers = (0..self.n)
            .map(|v| {
                let k = self.rng.random_range(1..=3);
                let atoms = self
                    .masses(k)
                    .into_iter()
                    .map(|p| {
                        let s = if self.rng.random_bool(0.25) {
                            NodeSet::EMPTY
                        } else {
                            self.subset_without(v, 3).unwrap_or(NodeSet::EMPTY)
                        };
                        (p, s)
                    })
                    .collect();
                merge(atoms)
            })
            .collect();
        TriggeringModel::new(self.universe(), triggers).expect("generated triggers are valid")
    }

    pub fn hypergraph(&mut self, max_edges: usize) -> Hypergraph {
        let mut g = Hypergraph::empty(self.n);
        for _ in 0..max_edges {
            let head = self.rng.random_range(0..self.n);
            if let Some(tail) = self.subset_without(head, 3) {
                g.insert(Hyperedge { head, tail });
            }
        }
        g
    }

    pub fn sbfd(&mut self) -> SbfdModel {
        let functions = (0..self.n)
            .map(|v| {
                let k = self.rng.random_range(1..=3);
                let atoms = self.masses(k).into_iter().map(|p| (p, self.dnf(v))).collect();
                merge(atoms)
            })
            .collect();
        SbfdModel::new(self.universe(), functions).expect("generated functions are valid")
    }

    pub fn hypergraph_triggering(&mut self) -> HypergraphTriggeringModel {
        crate::transform::sbfd_to_hypergraph_triggering(&self.sbfd())
    }

    pub fn shd(&mut self, atoms: usize) -> CorrelatedShdModel {
        let max_edges = 2 * self.n;
        let graphs = self
            .masses(atoms)
            .into_iter()
            .map(|p| (p, self.hypergraph(max_edges)))
            .collect();
        CorrelatedShdModel::new(self.universe(), merge(graphs)).expect("generated graphs are valid")
    }

    pub fn sbfd_correlated(&mut self, atoms: usize) -> CorrelatedSbfdModel {
        let profiles = self
            .masses(atoms)
            .into_iter()
            .map(|p| (p, (0..self.n).map(|v| self.dnf(v)).collect()))
            .collect();
        CorrelatedSbfdModel::new(self.universe(), merge(profiles)).expect("generated profiles are valid")
    }

    /// Random tables with a finite joint threshold law; thresholds may be 0.
    pub fn cgt(&mut self, atoms: usize) -> CgtModel {
        let tables = (0..self.n).map(|v| self.threshold_table(v)).collect();
        let thresholds = self
            .masses(atoms)
            .into_iter()
            .map(|p| (p, ThresholdVector((0..self.n).map(|_| self.grid(0, GRID)).collect())))
            .collect();
        CgtModel::new(self.universe(), tables, merge(thresholds)).expect("generated model is valid")
    }

    pub fn seed_set(&mut self) -> NodeSet {
        NodeSet::from_bits(self.rng.random_range(1..(1u64 << self.n)))
    }
}

/// Adds up the masses of repeated configurations, keeping first-seen order.
fn merge<C: PartialEq>(atoms: Vec<(Probability, C)>) -> FiniteSupportDistribution<C> {
    let mut out: Vec<(Probability, C)> = Vec::with_capacity(atoms.len());
    for (p, c) in atoms {
        match out.iter_mut().find(|(_, d)| *d == c) {
            Some((q, _)) => *q += &p,
            None => out.push((p, c)),
        }
    }
    FiniteSupportDistribution::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_models_validate() {
        for seed in 0..40 {
            let mut g = ModelGenerator::new(4, seed);
            let models: Vec<Model> = vec![
                g.gt().into(),
                g.triggering().into(),
                g.hypergraph_triggering().into(),
                g.shd(3).into(),
                g.sbfd().into(),
                g.sbfd_correlated(3).into(),
                g.cgt(3).into(),
            ];
            for m in models {
                assert!(m.validate().is_ok(), "{}: {}", m.kind(), m.validate());
            }
        }
    }

    #[test]
    fn same_seed_same_model() {
        let a = ModelGenerator::new(5, 9).sbfd();
        let b = ModelGenerator::new(5, 9).sbfd();
        assert_eq!(a.functions, b.functions);
    }
}
