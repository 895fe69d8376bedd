//! Constructive conversions between model classes.
//!
//! Each converter is exact: the output induces the same distribution over
//! progressive sequences for every seed set as its input. Converters are not
//! injective; many Boolean-function models map to one threshold model.
//!
//! The canonical Boolean-function representative of a threshold model is the
//! nested level-set family built by [`gt_to_sbfd`].

use num_bigint::BigUint;
use num_traits::One;

use crate::dist::FiniteSupportDistribution;
use crate::dnf::{antichain_minimize, MonotoneDnf};
use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph};
use crate::models::{
    CorrelatedSbfdModel, CorrelatedShdModel, EdgeSet, GeneralThresholdModel, HypergraphTriggeringModel, Model,
    ModelKind, SbfdModel, TriggeringModel,
};
use crate::nodes::NodeSet;
use crate::prob::Probability;
use crate::threshold::ThresholdTable;

/// Largest universe for operations that enumerate all subsets of `V ∖ {v}`.
pub const MAX_ENUMERATION_NODES: usize = 20;

/// Largest `n` accepted by [`parameter_count`]; the second count has
/// `2^(n-1) - 1` bits.
pub const MAX_PARAMETER_COUNT_NODES: usize = 24;

/// Positive DNF of the tails pointing at `v`.
pub fn edges_to_dnf(v: usize, tails: impl IntoIterator<Item = NodeSet>) -> MonotoneDnf {
    antichain_minimize(v, tails).expect("validated hyperedges have nonempty tails without their head")
}

/// One hyperedge per minimal true set.
pub fn dnf_to_edges(g: &MonotoneDnf) -> EdgeSet {
    g.minimal_true_sets()
        .iter()
        .map(|&tail| Hyperedge { head: g.owner(), tail })
        .collect()
}

/// `g_v = ⋁_{(U, v) ∈ H} ⋀_{u ∈ U} x_u`, reduced to its minimal true sets.
pub fn hypergraph_to_dnf(g: &Hypergraph) -> Vec<MonotoneDnf> {
    (0..g.node_count()).map(|v| edges_to_dnf(v, g.tails_into(v))).collect()
}

/// Hypergraph with one edge `(U, v)` per minimal true set `U` of `g_v`.
pub fn dnf_to_hypergraph(g: &[MonotoneDnf]) -> Result<Hypergraph> {
    if let Some((v, f)) = g.iter().enumerate().find(|(v, f)| f.owner() != *v) {
        return Err(Error::InvalidArgument(format!(
            "function in slot {v} belongs to node {}",
            f.owner()
        )));
    }
    Ok(Hypergraph::from_edges_unchecked(g.len(), g.iter().flat_map(dnf_to_edges)))
}

/// Adds up the masses of atoms with equal configurations, keeping first-seen order.
fn merge_atoms<C: PartialEq>(atoms: Vec<(Probability, C)>) -> FiniteSupportDistribution<C> {
    let mut out: Vec<(Probability, C)> = Vec::with_capacity(atoms.len());
    for (p, c) in atoms {
        match out.iter_mut().find(|(_, d)| *d == c) {
            Some((q, _)) => *q += &p,
            None => out.push((p, c)),
        }
    }
    FiniteSupportDistribution::new(out)
}

/// Each triggering set `T_v` becomes the singleton-tailed edges `{({u}, v) : u ∈ T_v}`.
pub fn triggering_to_hypergraph_triggering(m: &TriggeringModel) -> HypergraphTriggeringModel {
    let incoming = m
        .triggers
        .iter()
        .enumerate()
        .map(|(v, d)| {
            d.map(|t| {
                t.iter()
                    .map(|u| Hyperedge {
                        head: v,
                        tail: NodeSet::singleton(u),
                    })
                    .collect()
            })
        })
        .collect();
    HypergraphTriggeringModel {
        universe: m.universe.clone(),
        incoming,
    }
}

pub fn hypergraph_triggering_to_sbfd(m: &HypergraphTriggeringModel) -> SbfdModel {
    let functions = m
        .incoming
        .iter()
        .enumerate()
        .map(|(v, d)| {
            merge_atoms(
                d.atoms()
                    .iter()
                    .map(|(p, edges)| (p.clone(), edges_to_dnf(v, edges.iter().map(|e| e.tail))))
                    .collect(),
            )
        })
        .collect();
    SbfdModel {
        universe: m.universe.clone(),
        functions,
    }
}

pub fn sbfd_to_hypergraph_triggering(m: &SbfdModel) -> HypergraphTriggeringModel {
    HypergraphTriggeringModel {
        universe: m.universe.clone(),
        incoming: m.functions.iter().map(|d| d.map(dnf_to_edges)).collect(),
    }
}

/// Correlated hypergraph law to correlated Boolean-function law.
pub fn shd_to_sbfd(m: &CorrelatedShdModel) -> CorrelatedSbfdModel {
    CorrelatedSbfdModel {
        universe: m.universe.clone(),
        profiles: merge_atoms(
            m.graphs
                .atoms()
                .iter()
                .map(|(p, g)| (p.clone(), hypergraph_to_dnf(g)))
                .collect(),
        ),
    }
}

pub fn sbfd_to_shd(m: &CorrelatedSbfdModel) -> Result<CorrelatedShdModel> {
    Ok(CorrelatedShdModel {
        universe: m.universe.clone(),
        graphs: m.profiles.try_map(|g| dnf_to_hypergraph(g))?,
    })
}

/// Level-set representation of a threshold model.
///
/// For node `v` with distinct values `0 = a_0 < a_1 < ... < a_m` of `f_v`,
/// atom `i` has mass `a_i - a_{i-1}` and function `𝕀{f_v(S) ≥ a_i}`; a final
/// constant-0 atom carries `1 - a_m` when `a_m < 1`. Then
/// `Pr{g_v(S) = 1} = f_v(S)` for every `S`, and the functions are nested.
pub fn gt_to_sbfd(m: &GeneralThresholdModel) -> Result<SbfdModel> {
    m.validate().into_result()?;
    let functions = m.tables.iter().map(level_set_distribution).collect();
    Ok(SbfdModel {
        universe: m.universe.clone(),
        functions,
    })
}

fn level_set_distribution(table: &ThresholdTable) -> FiniteSupportDistribution<MonotoneDnf> {
    let v = table.owner();
    let levels = table.levels();
    let mut atoms: Vec<(Probability, MonotoneDnf)> = levels
        .windows(2)
        .map(|w| {
            let g = antichain_minimize(v, table.minimal_sets_at_least(&w[1]))
                .expect("validated table keys exclude the owner and positive levels exclude ∅");
            (&w[1] - &w[0], g)
        })
        .collect();
    let top = levels.last().expect("levels contain 0");
    if !top.is_one() {
        atoms.push((top.complement(), MonotoneDnf::constant_zero(v)));
    }
    FiniteSupportDistribution::new(atoms)
}

/// `f_v(S) = Pr{g_v(S) = 1}`, stored only where `f_v` strictly exceeds its
/// value on every proper subset.
pub fn sbfd_to_gt(m: &SbfdModel) -> Result<GeneralThresholdModel> {
    let n = m.universe.len();
    if n > MAX_ENUMERATION_NODES {
        return Err(Error::TooManyNodes {
            what: "threshold extraction",
            n,
            limit: MAX_ENUMERATION_NODES,
        });
    }
    m.validate().into_result()?;
    let tables = m
        .functions
        .iter()
        .enumerate()
        .map(|(v, d)| activation_table(v, n, d))
        .collect();
    Ok(GeneralThresholdModel {
        universe: m.universe.clone(),
        tables,
    })
}

/// Set-node activation probabilities of one node as a sparse table.
fn activation_table(v: usize, n: usize, d: &FiniteSupportDistribution<MonotoneDnf>) -> ThresholdTable {
    let others = NodeSet::full(n).without(v);
    let mut values: Vec<Option<Probability>> = vec![None; 1 << n];
    let mut table = ThresholdTable::new(v);
    for s in others.subsets() {
        let p: Probability = d.iter().filter(|(_, g)| g.eval(s)).map(|(p, _)| p).sum();
        let below = s
            .iter()
            .map(|u| values[s.without(u).bits() as usize].as_ref().expect("subsets visited first"))
            .max();
        let increases = match below {
            Some(b) => p > *b,
            None => !p.is_zero(),
        };
        if increases {
            table.set(s, p.clone());
        }
        values[s.bits() as usize] = Some(p);
    }
    table
}

/// Threshold model of any node-independent model.
pub fn to_gt(model: &Model) -> Result<GeneralThresholdModel> {
    match model {
        Model::Gt(m) => Ok(m.clone()),
        Model::Sbfd(m) => sbfd_to_gt(m),
        Model::HypergraphTriggering(m) => sbfd_to_gt(&hypergraph_triggering_to_sbfd(m)),
        Model::Triggering(m) => sbfd_to_gt(&hypergraph_triggering_to_sbfd(&triggering_to_hypergraph_triggering(m))),
        _ => Err(unconvertible(model.kind(), ModelKind::Gt)),
    }
}

/// Node-independent Boolean-function model of any node-independent model.
pub fn to_sbfd(model: &Model) -> Result<SbfdModel> {
    match model {
        Model::Gt(m) => gt_to_sbfd(m),
        Model::Sbfd(m) => Ok(m.clone()),
        Model::HypergraphTriggering(m) => Ok(hypergraph_triggering_to_sbfd(m)),
        Model::Triggering(m) => Ok(hypergraph_triggering_to_sbfd(&triggering_to_hypergraph_triggering(m))),
        _ => Err(unconvertible(model.kind(), ModelKind::Sbfd)),
    }
}

pub fn to_hypergraph_triggering(model: &Model) -> Result<HypergraphTriggeringModel> {
    match model {
        Model::HypergraphTriggering(m) => Ok(m.clone()),
        Model::Triggering(m) => Ok(triggering_to_hypergraph_triggering(m)),
        Model::Sbfd(m) => Ok(sbfd_to_hypergraph_triggering(m)),
        Model::Gt(m) => Ok(sbfd_to_hypergraph_triggering(&gt_to_sbfd(m)?)),
        _ => Err(unconvertible(model.kind(), ModelKind::HypergraphTriggering)),
    }
}

/// Converts to `target` when an exact conversion exists.
pub fn convert(model: &Model, target: ModelKind) -> Result<Model> {
    match target {
        ModelKind::Gt => to_gt(model).map(Model::Gt),
        ModelKind::Sbfd => to_sbfd(model).map(Model::Sbfd),
        ModelKind::HypergraphTriggering => to_hypergraph_triggering(model).map(Model::HypergraphTriggering),
        ModelKind::Shd => match model {
            Model::Shd(m) => Ok(Model::Shd(m.clone())),
            Model::SbfdCorrelated(m) => sbfd_to_shd(m).map(Model::Shd),
            _ => Err(unconvertible(model.kind(), target)),
        },
        ModelKind::SbfdCorrelated => match model {
            Model::SbfdCorrelated(m) => Ok(Model::SbfdCorrelated(m.clone())),
            Model::Shd(m) => Ok(Model::SbfdCorrelated(shd_to_sbfd(m))),
            _ => Err(unconvertible(model.kind(), target)),
        },
        _ => Err(unconvertible(model.kind(), target)),
    }
}

fn unconvertible(from: ModelKind, to: ModelKind) -> Error {
    let reason = match from {
        ModelKind::Cgt => {
            "correlated threshold models are a strict subclass of correlated hypergraph models and have no node-independent form in general"
        }
        ModelKind::Shd | ModelKind::SbfdCorrelated if to.is_node_independent() => {
            "the model's randomness is correlated across nodes, which node-independent classes cannot express in general"
        }
        _ => "conversion not supported for this pair",
    };
    Error::Unconvertible {
        from: from.as_str(),
        to: to.as_str(),
        reason,
    }
}

/// Free parameters of a threshold model and of a fully general
/// hypergraph-triggering model on `n` nodes:
/// `(n·(2^(n-1) - 1), n·2^(2^(n-1) - 1))`.
pub fn parameter_count(n: usize) -> Result<(BigUint, BigUint)> {
    if n < 1 {
        return Err(Error::InvalidArgument("parameter_count needs n ≥ 1".into()));
    }
    if n > MAX_PARAMETER_COUNT_NODES {
        return Err(Error::TooManyNodes {
            what: "parameter_count",
            n,
            limit: MAX_PARAMETER_COUNT_NODES,
        });
    }
    let hyperedges_per_head = (BigUint::one() << (n - 1)) - BigUint::one();
    let gt = BigUint::from(n) * &hyperedges_per_head;
    let exp = usize::try_from(&hyperedges_per_head).expect("bounded by MAX_PARAMETER_COUNT_NODES");
    let ht = BigUint::from(n) * (BigUint::one() << exp);
    Ok((gt, ht))
}
