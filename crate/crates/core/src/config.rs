//! A model's randomness as a list of independent factors (node-independent
//! classes) or a single joint factor (correlated classes). Picking one atom
//! per factor fixes a deterministic configuration.

use std::borrow::Cow;

use crate::dist::FiniteSupportDistribution;
use crate::dnf::MonotoneDnf;
use crate::engine::{hypergraph_step, profile_step, threshold_step, triggering_step};
use crate::hypergraph::Hypergraph;
use crate::models::{EdgeSet, Model};
use crate::nodes::NodeSet;
use crate::prob::Probability;
use crate::sequence::ProgressiveSequence;
use crate::threshold::{ThresholdTable, ThresholdVector};

/// A fully sampled model: the deterministic rule that drives one run.
pub(crate) enum Config<'m> {
    Threshold {
        tables: &'m [ThresholdTable],
        theta: ThresholdVector,
    },
    Triggering(Vec<NodeSet>),
    Hypergraph(Cow<'m, Hypergraph>),
    Profile(Vec<&'m MonotoneDnf>),
}

impl Config<'_> {
    /// Runs from a seed already checked against the universe.
    pub fn run(&self, seed: NodeSet, n: usize) -> ProgressiveSequence {
        match self {
            Config::Threshold { tables, theta } => {
                ProgressiveSequence::from_dynamics(seed, n, |s| threshold_step(tables, theta, s))
            }
            Config::Triggering(t) => ProgressiveSequence::from_dynamics(seed, n, |s| triggering_step(t, s)),
            Config::Hypergraph(g) => ProgressiveSequence::from_dynamics(seed, n, |s| hypergraph_step(g, s)),
            Config::Profile(g) => ProgressiveSequence::from_dynamics(seed, n, |s| profile_step(g, s)),
        }
    }
}

/// Finite randomness of a model.
pub(crate) enum Structure<'m> {
    /// Threshold cells per node: `(mass, representative θ_v)`.
    ThresholdCells {
        tables: &'m [ThresholdTable],
        cells: Vec<Vec<(Probability, Probability)>>,
    },
    Triggering(&'m [FiniteSupportDistribution<NodeSet>]),
    Hyperedges(usize, &'m [FiniteSupportDistribution<EdgeSet>]),
    Functions(&'m [FiniteSupportDistribution<MonotoneDnf>]),
    Graphs(&'m FiniteSupportDistribution<Hypergraph>),
    Profiles(&'m FiniteSupportDistribution<Vec<MonotoneDnf>>),
    JointThresholds {
        tables: &'m [ThresholdTable],
        dist: &'m FiniteSupportDistribution<ThresholdVector>,
    },
}

impl<'m> Structure<'m> {
    pub fn of(model: &'m Model) -> Self {
        match model {
            Model::Gt(m) => Structure::ThresholdCells {
                tables: &m.tables,
                cells: m.tables.iter().map(threshold_cells).collect(),
            },
            Model::Triggering(m) => Structure::Triggering(&m.triggers),
            Model::HypergraphTriggering(m) => Structure::Hyperedges(m.universe.len(), &m.incoming),
            Model::Sbfd(m) => Structure::Functions(&m.functions),
            Model::Shd(m) => Structure::Graphs(&m.graphs),
            Model::SbfdCorrelated(m) => Structure::Profiles(&m.profiles),
            Model::Cgt(m) => Structure::JointThresholds {
                tables: &m.tables,
                dist: &m.thresholds,
            },
        }
    }

    /// Number of atoms in each independent factor.
    pub fn atom_counts(&self) -> Vec<usize> {
        match self {
            Structure::ThresholdCells { cells, .. } => cells.iter().map(Vec::len).collect(),
            Structure::Triggering(d) => d.iter().map(|x| x.len()).collect(),
            Structure::Hyperedges(_, d) => d.iter().map(|x| x.len()).collect(),
            Structure::Functions(d) => d.iter().map(|x| x.len()).collect(),
            Structure::Graphs(d) => vec![d.len()],
            Structure::Profiles(d) => vec![d.len()],
            Structure::JointThresholds { dist, .. } => vec![dist.len()],
        }
    }

    pub fn mass(&self, factor: usize, atom: usize) -> &Probability {
        match self {
            Structure::ThresholdCells { cells, .. } => &cells[factor][atom].0,
            Structure::Triggering(d) => &d[factor].atoms()[atom].0,
            Structure::Hyperedges(_, d) => &d[factor].atoms()[atom].0,
            Structure::Functions(d) => &d[factor].atoms()[atom].0,
            Structure::Graphs(d) => &d.atoms()[atom].0,
            Structure::Profiles(d) => &d.atoms()[atom].0,
            Structure::JointThresholds { dist, .. } => &dist.atoms()[atom].0,
        }
    }

    /// The configuration with atom `choice[i]` drawn from factor `i`.
    pub fn configure(&self, choice: &[usize]) -> Config<'m> {
        match self {
            Structure::ThresholdCells { tables, cells } => Config::Threshold {
                tables,
                theta: ThresholdVector(
                    cells
                        .iter()
                        .zip(choice)
                        .map(|(c, &i)| c[i].1.clone())
                        .collect(),
                ),
            },
            Structure::Triggering(d) => {
                Config::Triggering(d.iter().zip(choice).map(|(x, &i)| x.atoms()[i].1).collect())
            }
            Structure::Hyperedges(n, d) => {
                let edges = d
                    .iter()
                    .zip(choice)
                    .flat_map(|(x, &i)| x.atoms()[i].1.iter().copied());
                Config::Hypergraph(Cow::Owned(Hypergraph::from_edges_unchecked(*n, edges)))
            }
            Structure::Functions(d) => {
                Config::Profile(d.iter().zip(choice).map(|(x, &i)| &x.atoms()[i].1).collect())
            }
            Structure::Graphs(d) => Config::Hypergraph(Cow::Borrowed(&d.atoms()[choice[0]].1)),
            Structure::Profiles(d) => Config::Profile(d.atoms()[choice[0]].1.iter().collect()),
            Structure::JointThresholds { tables, dist } => Config::Threshold {
                tables,
                theta: dist.atoms()[choice[0]].1.clone(),
            },
        }
    }
}

/// Partition of `θ_v ∈ (0, 1]` into cells on which every comparison
/// `f_v(S) ≥ θ_v` is constant: `(a_{i-1}, a_i]` for consecutive distinct
/// values of `f_v`, plus `(a_m, 1]` when `a_m < 1`. Each cell is represented
/// by its right endpoint.
pub(crate) fn threshold_cells(table: &ThresholdTable) -> Vec<(Probability, Probability)> {
    let levels = table.levels();
    let mut cells: Vec<(Probability, Probability)> = levels
        .windows(2)
        .map(|w| (&w[1] - &w[0], w[1].clone()))
        .collect();
    let top = levels.last().expect("levels always contain 0");
    if !top.is_one() {
        cells.push((top.complement(), Probability::one()));
    }
    cells
}
