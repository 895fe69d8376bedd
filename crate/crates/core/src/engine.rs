//! Deterministic one-step rules and the diffusions they generate.
//!
//! Every stochastic model reduces to one of these once its randomness
//! (hypergraph, triggering sets, Boolean functions or thresholds) is fixed.

use crate::dnf::MonotoneDnf;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::models::GeneralThresholdModel;
use crate::nodes::NodeSet;
use crate::sequence::ProgressiveSequence;
use crate::threshold::{ThresholdTable, ThresholdVector};

fn check_seed(seed: NodeSet, n: usize) -> Result<()> {
    if seed.is_empty() {
        return Err(Error::EmptySeed);
    }
    check_in_universe(seed, n)
}

fn check_in_universe(s: NodeSet, n: usize) -> Result<()> {
    if s.is_subset(NodeSet::full(n)) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch(format!("{s:?} is not a subset of a {n}-node universe")))
    }
}

/// One hypergraph step: `S ∪ {v : (U, v) ∈ H, U ⊆ S}`.
pub fn bfs_step(g: &Hypergraph, s: NodeSet) -> Result<NodeSet> {
    check_in_universe(s, g.node_count())?;
    Ok(hypergraph_step(g, s))
}

pub(crate) fn hypergraph_step(g: &Hypergraph, s: NodeSet) -> NodeSet {
    g.edges()
        .filter(|e| e.tail.is_subset(s))
        .fold(s, |acc, e| acc.with(e.head))
}

/// The BFS sequence `S_t = Γ_t(G, S_0)`, length `n`.
pub fn bfs_propagate(g: &Hypergraph, seed: NodeSet) -> Result<ProgressiveSequence> {
    check_seed(seed, g.node_count())?;
    Ok(ProgressiveSequence::from_dynamics(seed, g.node_count(), |s| hypergraph_step(g, s)))
}

fn check_profile(g: &[MonotoneDnf]) -> Result<()> {
    match g.iter().enumerate().find(|(v, f)| f.owner() != *v) {
        Some((v, f)) => Err(Error::InvalidArgument(format!(
            "function in slot {v} belongs to node {}",
            f.owner()
        ))),
        None => Ok(()),
    }
}

/// `x_v ∨ g_v(x_{-v})` for every node.
pub fn boolean_transition(g: &[MonotoneDnf], x: NodeSet) -> Result<NodeSet> {
    check_profile(g)?;
    check_in_universe(x, g.len())?;
    Ok(profile_step(g, x))
}

pub(crate) fn profile_step<G: std::borrow::Borrow<MonotoneDnf>>(g: &[G], x: NodeSet) -> NodeSet {
    g.iter()
        .enumerate()
        .filter(|(v, f)| !x.contains(*v) && f.borrow().eval(x))
        .fold(x, |acc, (v, _)| acc.with(v))
}

/// Repeated Boolean transitions from `x^{S_0}`.
pub fn sbfd_diffuse(g: &[MonotoneDnf], seed: NodeSet) -> Result<ProgressiveSequence> {
    check_profile(g)?;
    check_seed(seed, g.len())?;
    Ok(ProgressiveSequence::from_dynamics(seed, g.len(), |x| profile_step(g, x)))
}

/// Fixed triggering sets: `v` joins once any member of `T_v` is active.
pub fn triggering_diffuse(triggers: &[NodeSet], seed: NodeSet) -> Result<ProgressiveSequence> {
    check_seed(seed, triggers.len())?;
    Ok(ProgressiveSequence::from_dynamics(seed, triggers.len(), |s| triggering_step(triggers, s)))
}

pub(crate) fn triggering_step(triggers: &[NodeSet], s: NodeSet) -> NodeSet {
    triggers
        .iter()
        .enumerate()
        .filter(|(_, t)| t.intersects(s))
        .fold(s, |acc, (v, _)| acc.with(v))
}

pub(crate) fn threshold_step<T: std::borrow::Borrow<ThresholdTable>>(
    tables: &[T],
    theta: &ThresholdVector,
    s: NodeSet,
) -> NodeSet {
    tables
        .iter()
        .enumerate()
        .filter(|(v, f)| !s.contains(*v) && f.borrow().value(s) >= *theta.get(*v))
        .fold(s, |acc, (v, _)| acc.with(v))
}

/// Threshold diffusion with fixed thresholds: an inactive `v` activates when
/// `f_v(S_{t-1}) ≥ θ_v`. Taken literally, so `θ_v = 0` activates `v` at step 1
/// regardless of its neighbours.
pub fn gt_diffuse_fixed(
    model: &GeneralThresholdModel,
    theta: &ThresholdVector,
    seed: NodeSet,
) -> Result<ProgressiveSequence> {
    threshold_diffuse(&model.tables, theta, seed)
}

pub(crate) fn threshold_diffuse(
    tables: &[ThresholdTable],
    theta: &ThresholdVector,
    seed: NodeSet,
) -> Result<ProgressiveSequence> {
    let n = tables.len();
    if theta.len() != n {
        return Err(Error::UniverseMismatch(format!(
            "{} thresholds for {n} nodes",
            theta.len()
        )));
    }
    check_seed(seed, n)?;
    Ok(ProgressiveSequence::from_dynamics(seed, n, |s| threshold_step(tables, theta, s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnf::antichain_minimize;
    use crate::hypergraph::Hyperedge;
    use crate::nodes::NodeUniverse;
    use crate::prob::Probability;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    fn s(v: &[usize]) -> NodeSet {
        NodeSet::from_indices(v.iter().copied())
    }

    fn edge(tail: &[usize], head: usize) -> Hyperedge {
        Hyperedge::new(s(tail), head).unwrap()
    }

    fn p(x: &str) -> Probability {
        Probability::parse(x).unwrap()
    }

    fn example_graph() -> Hypergraph {
        Hypergraph::new(3, [edge(&[A, B], C), edge(&[A], B)]).unwrap()
    }

    #[test]
    fn one_step_follows_only_complete_tails() {
        assert_eq!(bfs_step(&example_graph(), s(&[A])).unwrap(), s(&[A, B]));
        let g = Hypergraph::new(3, [edge(&[A, B], C)]).unwrap();
        assert_eq!(bfs_step(&g, s(&[A])).unwrap(), s(&[A]));
        assert_eq!(bfs_step(&g, NodeSet::full(3)).unwrap(), NodeSet::full(3));
        assert!(bfs_step(&g, s(&[5])).is_err());
    }

    #[test]
    fn propagate_two_hand_traced_steps() {
        let seq = bfs_propagate(&example_graph(), s(&[A])).unwrap();
        assert_eq!(seq.sets(), &[s(&[A]), s(&[A, B]), s(&[A, B, C])]);
        let full = bfs_propagate(&example_graph(), NodeSet::full(3)).unwrap();
        assert_eq!(full, ProgressiveSequence::constant(NodeSet::full(3), 3));
        assert!(matches!(bfs_propagate(&example_graph(), NodeSet::EMPTY), Err(Error::EmptySeed)));
    }

    #[test]
    fn boolean_transition_cases() {
        let g = vec![
            MonotoneDnf::constant_zero(A),
            MonotoneDnf::constant_zero(B),
            antichain_minimize(C, [s(&[A, B])]).unwrap(),
        ];
        assert_eq!(boolean_transition(&g, s(&[A, B])).unwrap(), s(&[A, B, C]));
        assert_eq!(boolean_transition(&g, s(&[A])).unwrap(), s(&[A]));
        assert_eq!(boolean_transition(&g, NodeSet::full(3)).unwrap(), NodeSet::full(3));
        let zeros: Vec<_> = (0..3).map(MonotoneDnf::constant_zero).collect();
        assert_eq!(boolean_transition(&zeros, s(&[B])).unwrap(), s(&[B]));
        let swapped = vec![MonotoneDnf::constant_zero(B), MonotoneDnf::constant_zero(A)];
        assert!(boolean_transition(&swapped, s(&[A])).is_err());
    }

    #[test]
    fn sbfd_single_transition() {
        let g = vec![
            antichain_minimize(A, [s(&[B])]).unwrap(),
            antichain_minimize(B, [s(&[A])]).unwrap(),
        ];
        let seq = sbfd_diffuse(&g, s(&[A])).unwrap();
        assert_eq!(seq.sets(), &[s(&[A]), s(&[A, B])]);
        let zeros: Vec<_> = (0..3).map(MonotoneDnf::constant_zero).collect();
        assert_eq!(
            sbfd_diffuse(&zeros, s(&[A])).unwrap(),
            ProgressiveSequence::constant(s(&[A]), 3)
        );
    }

    fn two_node_gt() -> GeneralThresholdModel {
        GeneralThresholdModel::new(
            NodeUniverse::new(["a", "b"]).unwrap(),
            vec![
                ThresholdTable::new(A),
                ThresholdTable::from_entries(B, [(s(&[A]), p("1/2"))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fixed_threshold_comparisons() {
        let m = two_node_gt();
        let low = ThresholdVector(vec![p("1/2"), p("1/4")]);
        let high = ThresholdVector(vec![p("1/2"), p("3/4")]);
        assert_eq!(gt_diffuse_fixed(&m, &low, s(&[A])).unwrap().sets(), &[s(&[A]), s(&[A, B])]);
        assert_eq!(gt_diffuse_fixed(&m, &high, s(&[A])).unwrap().sets(), &[s(&[A]), s(&[A])]);
        // ties activate
        let tie = ThresholdVector(vec![p("1"), p("1/2")]);
        assert_eq!(gt_diffuse_fixed(&m, &tie, s(&[A])).unwrap().last(), s(&[A, B]));
    }

    #[test]
    fn zero_threshold_activates_unconditionally() {
        let m = two_node_gt();
        let zero = ThresholdVector(vec![p("0"), p("0")]);
        // f_a ≡ 0 but θ_a = 0, so a activates from seed {b}
        assert_eq!(gt_diffuse_fixed(&m, &zero, s(&[B])).unwrap().sets(), &[s(&[B]), s(&[A, B])]);
    }

    #[test]
    fn triggering_point_mass_on_everyone_activates_all_at_once() {
        let t: Vec<NodeSet> = (0..4).map(|v| NodeSet::full(4).without(v)).collect();
        let seq = triggering_diffuse(&t, s(&[2])).unwrap();
        assert_eq!(seq.at(1), NodeSet::full(4));
    }
}
