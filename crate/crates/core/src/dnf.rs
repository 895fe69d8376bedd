//! Monotone normalized Boolean activation functions in positive DNF.

use crate::error::{Error, Result};
use crate::nodes::NodeSet;
use crate::validate::Violation;

/// `g_owner` as the antichain of its minimal true sets.
///
/// `g(x) = 1` iff some listed set is contained in the active set. The empty
/// antichain is the constant-0 function. Canonical instances keep their sets
/// sorted by cardinality, then mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneDnf {
    owner: usize,
    terms: Vec<NodeSet>,
}

impl MonotoneDnf {
    pub fn constant_zero(owner: usize) -> Self {
        MonotoneDnf { owner, terms: Vec::new() }
    }

    /// Stores `terms` as given. Use [`antichain_minimize`] for canonical form
    /// and [`MonotoneDnf::violations`] to check the invariants.
    pub fn from_terms_unchecked(owner: usize, terms: Vec<NodeSet>) -> Self {
        MonotoneDnf { owner, terms }
    }

    /// Same terms, sorted canonically. Does not remove absorbed terms.
    pub fn sorted(mut self) -> Self {
        self.terms.sort_by(NodeSet::canonical_cmp);
        self
    }

    pub fn owner(&self) -> usize {
        self.owner
    }

    pub fn minimal_true_sets(&self) -> &[NodeSet] {
        &self.terms
    }

    pub fn is_constant_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates on the active set; membership of the owner is ignored.
    pub fn eval(&self, active: NodeSet) -> bool {
        let x = active.without(self.owner);
        self.terms.iter().any(|t| t.is_subset(x))
    }

    pub fn violations(&self, n: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let full = NodeSet::full(n);
        for (i, t) in self.terms.iter().enumerate() {
            if t.is_empty() {
                out.push(Violation::new(format!("term {i}"), "empty term makes g(0) = 1 (not normalized)"));
            }
            if t.contains(self.owner) {
                out.push(Violation::new(format!("term {i}"), "term contains the owner node"));
            }
            if !t.is_subset(full) {
                out.push(Violation::new(format!("term {i}"), "term mentions nodes outside the universe"));
            }
        }
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in self.terms.iter().enumerate() {
                if i != j && a.is_subset(*b) && (a != b || i < j) {
                    out.push(Violation::new(
                        format!("terms {i}, {j}"),
                        "minimal true sets must form an antichain",
                    ));
                }
            }
        }
        out
    }
}

/// Reduces `sets` to the inclusion-minimal ones, sorted canonically.
///
/// Errors if a set contains `owner` or is empty (the latter would make the
/// function constant 1).
pub fn antichain_minimize<I>(owner: usize, sets: I) -> Result<MonotoneDnf>
where
    I: IntoIterator<Item = NodeSet>,
{
    let mut sets: Vec<NodeSet> = sets.into_iter().collect();
    for s in &sets {
        if s.contains(owner) {
            return Err(Error::InvalidArgument(format!(
                "term {s:?} contains its owner node {owner}"
            )));
        }
        if s.is_empty() {
            return Err(Error::InvalidArgument(
                "empty term would make the function constant 1".into(),
            ));
        }
    }
    sets.sort_by(NodeSet::canonical_cmp);
    sets.dedup();
    // smaller sets come first, so anything kept is never a superset of a later one
    let mut kept: Vec<NodeSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    Ok(MonotoneDnf { owner, terms: kept })
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const OWNER: usize = 3;

    fn set(v: &[usize]) -> NodeSet {
        NodeSet::from_indices(v.iter().copied())
    }

    #[test]
    fn superset_absorbed() {
        let g = antichain_minimize(OWNER, [set(&[A, B]), set(&[A])]).unwrap();
        assert_eq!(g.minimal_true_sets(), &[set(&[A])]);
    }

    #[test]
    fn empty_input_is_constant_zero() {
        let g = antichain_minimize(OWNER, []).unwrap();
        assert!(g.is_constant_zero());
        assert!(!g.eval(NodeSet::full(4)));
    }

    #[test]
    fn three_sets_two_survive() {
        let g = antichain_minimize(OWNER, [set(&[A, B]), set(&[B, C]), set(&[A, B, C])]).unwrap();
        assert_eq!(g.minimal_true_sets(), &[set(&[A, B]), set(&[B, C])]);
    }

    #[test]
    fn owner_in_term_rejected() {
        assert!(antichain_minimize(OWNER, [set(&[A, OWNER])]).is_err());
        assert!(antichain_minimize(OWNER, [NodeSet::EMPTY]).is_err());
    }

    #[test]
    fn violations_detect_non_antichain() {
        let g = MonotoneDnf::from_terms_unchecked(OWNER, vec![set(&[A]), set(&[A, B])]);
        assert_eq!(g.violations(4).len(), 1);
        let dup = MonotoneDnf::from_terms_unchecked(OWNER, vec![set(&[A]), set(&[A])]);
        assert_eq!(dup.violations(4).len(), 1);
        let own = MonotoneDnf::from_terms_unchecked(OWNER, vec![set(&[OWNER])]);
        assert!(!own.violations(4).is_empty());
    }

    #[test]
    fn eval_ignores_owner_bit() {
        let g = antichain_minimize(OWNER, [set(&[A, B])]).unwrap();
        assert!(g.eval(set(&[A, B, OWNER])));
        assert!(!g.eval(set(&[A, OWNER])));
    }
}
