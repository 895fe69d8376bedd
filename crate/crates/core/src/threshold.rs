use std::collections::BTreeMap;

use crate::nodes::NodeSet;
use crate::prob::Probability;
use crate::validate::Violation;

/// Sparse threshold function `f_owner`.
///
/// Only some subsets carry an explicit value; the effective value of any set
/// is the largest entry stored at one of its subsets (0 if none), which is the
/// least monotone extension of the stored entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ThresholdTable {
    owner: usize,
    entries: BTreeMap<NodeSet, Probability>,
}

impl ThresholdTable {
    pub fn new(owner: usize) -> Self {
        ThresholdTable {
            owner,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I>(owner: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (NodeSet, Probability)>,
    {
        ThresholdTable {
            owner,
            entries: entries.into_iter().collect(),
        }
    }

    pub fn owner(&self) -> usize {
        self.owner
    }

    pub fn entries(&self) -> &BTreeMap<NodeSet, Probability> {
        &self.entries
    }

    pub fn set(&mut self, s: NodeSet, value: Probability) {
        self.entries.insert(s, value);
    }

    /// Effective `f(S)`; the owner's own membership in `active` is ignored.
    pub fn value(&self, active: NodeSet) -> Probability {
        let s = active.without(self.owner);
        self.entries
            .iter()
            .filter(|(k, _)| k.is_subset(s))
            .map(|(_, v)| v)
            .max()
            .cloned()
            .unwrap_or_else(Probability::zero)
    }

    /// Distinct values of `f` over all subsets, ascending, starting at 0.
    ///
    /// Every effective value is attained at some stored key, so only the keys
    /// need to be inspected.
    pub fn levels(&self) -> Vec<Probability> {
        let mut out: Vec<Probability> = self.entries.keys().map(|k| self.value(*k)).collect();
        out.push(Probability::zero());
        out.sort();
        out.dedup();
        out
    }

    /// Inclusion-minimal sets `S` with `f(S) ≥ level`, for `level > 0`.
    pub fn minimal_sets_at_least(&self, level: &Probability) -> Vec<NodeSet> {
        let mut keys: Vec<NodeSet> = self
            .entries
            .iter()
            .filter(|(_, v)| *v >= level)
            .map(|(k, _)| *k)
            .collect();
        keys.sort_by(NodeSet::canonical_cmp);
        let mut kept: Vec<NodeSet> = Vec::new();
        for k in keys {
            if !kept.iter().any(|m| m.is_subset(k)) {
                kept.push(k);
            }
        }
        kept
    }

    pub fn violations(&self, n: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let full = NodeSet::full(n);
        for (s, value) in &self.entries {
            let loc = format!("entry {s:?}");
            if s.contains(self.owner) {
                out.push(Violation::new(loc.clone(), "set contains the owner node"));
            }
            if !s.is_subset(full) {
                out.push(Violation::new(loc.clone(), "set mentions nodes outside the universe"));
            }
            if !value.is_unit() {
                out.push(Violation::new(loc.clone(), "value must lie in [0, 1]"));
            }
            if s.is_empty() && !value.is_zero() {
                out.push(Violation::new(loc.clone(), "f(∅) must be 0"));
            }
            // a stored value below a stored subset's value contradicts monotonicity
            if let Some((sub, v)) = self
                .entries
                .iter()
                .find(|(k, v)| *k != s && k.is_subset(*s) && *v > value)
            {
                out.push(Violation::new(
                    loc,
                    format!("not monotone: value {value} is below {v} stored at subset {sub:?}"),
                ));
            }
        }
        out
    }
}

/// One threshold per node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThresholdVector(pub Vec<Probability>);

impl ThresholdVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> &Probability {
        &self.0[v]
    }

    pub fn violations(&self, n: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.0.len() != n {
            out.push(Violation::new("", format!("expected {n} thresholds, got {}", self.0.len())));
        }
        for (v, t) in self.0.iter().enumerate() {
            if !t.is_unit() {
                out.push(Violation::new(format!("theta[{v}]"), "threshold must lie in [0, 1]"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Probability {
        Probability::parse(s).unwrap()
    }

    #[test]
    fn closure_takes_max_over_stored_subsets() {
        let t = ThresholdTable::from_entries(
            3,
            [
                (NodeSet::from_indices([0]), p("1/4")),
                (NodeSet::from_indices([1]), p("1/2")),
                (NodeSet::from_indices([0, 1, 2]), p("3/4")),
            ],
        );
        assert_eq!(t.value(NodeSet::EMPTY), Probability::zero());
        assert_eq!(t.value(NodeSet::from_indices([0, 1])), p("1/2"));
        assert_eq!(t.value(NodeSet::from_indices([0, 2])), p("1/4"));
        assert_eq!(t.value(NodeSet::from_indices([0, 1, 2, 3])), p("3/4"));
        assert!(t.violations(4).is_empty());
    }

    #[test]
    fn nonzero_empty_entry_flagged() {
        let t = ThresholdTable::from_entries(1, [(NodeSet::EMPTY, p("1/2"))]);
        let v = t.violations(2);
        assert!(v.iter().any(|v| v.rule == "f(∅) must be 0"), "{v:?}");
    }

    #[test]
    fn non_monotone_entries_flagged() {
        let t = ThresholdTable::from_entries(
            2,
            [
                (NodeSet::from_indices([0]), p("1/2")),
                (NodeSet::from_indices([0, 1]), p("1/4")),
            ],
        );
        assert_eq!(t.violations(3).len(), 1);
    }
}
