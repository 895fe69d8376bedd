use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest universe a [`NodeSet`] bitmask can address.
pub const MAX_NODES: usize = 64;

/// Ordered, duplicate-free node labels. A label's index never changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl NodeUniverse {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidArgument("a universe needs at least one node".into()));
        }
        if names.len() > MAX_NODES {
            return Err(Error::TooManyNodes {
                what: "node universe",
                n: names.len(),
                limit: MAX_NODES,
            });
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate node label `{name}`")));
            }
        }
        Ok(NodeUniverse { names, index })
    }

    /// Labels `"0"`, `"1"`, ... used by generated instances.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn full(&self) -> NodeSet {
        NodeSet::full(self.len())
    }

    pub fn set_from_labels<I, S>(&self, labels: I) -> Result<NodeSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = NodeSet::EMPTY;
        for l in labels {
            set.insert(self.index_of(l.as_ref())?);
        }
        Ok(set)
    }

    /// Member labels sorted lexicographically.
    pub fn sorted_labels(&self, set: NodeSet) -> Vec<String> {
        let mut out: Vec<String> = set.iter().map(|v| self.names[v].clone()).collect();
        out.sort();
        out
    }

    /// Fails if `set` mentions an index outside this universe.
    pub fn check(&self, set: NodeSet) -> Result<()> {
        if set.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(format!(
                "set {set:?} has members outside a universe of {} nodes",
                self.len()
            )))
        }
    }
}

/// Subset of a node universe as a 64-bit mask.
///
/// The derived order (by mask value) is the canonical "bit-lexicographic"
/// order used wherever output must be deterministic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        NodeSet(1 << v)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(NodeSet::EMPTY, |s, v| s.with(v))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        NodeSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        NodeSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> Self {
        NodeSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        NodeSet(!self.0 & NodeSet::full(n).0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: NodeSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets of `self`, including `∅` and `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
            Some(NodeSet(cur))
        })
    }

    /// Canonical order: cardinality first, then mask value.
    pub fn canonical_cmp(&self, other: &NodeSet) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet::from_indices(iter)
    }
}

/// Every nonempty subset of an `n`-node universe, in mask order.
pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = NodeSet> {
    NodeSet::full(n).subsets().skip(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = NodeSet::from_indices([0, 2]);
        let b = NodeSet::from_indices([2, 3]);
        assert_eq!(a.union(b), NodeSet::from_indices([0, 2, 3]));
        assert_eq!(a.intersection(b), NodeSet::singleton(2));
        assert_eq!(a.difference(b), NodeSet::singleton(0));
        assert_eq!(a.complement(4), NodeSet::from_indices([1, 3]));
        assert!(NodeSet::singleton(2).is_subset(a));
        assert!(!a.is_subset(b));
        assert_eq!(a.len(), 2);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = NodeSet::from_indices([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert_eq!(subs[0], NodeSet::EMPTY);
        assert_eq!(*subs.last().unwrap(), s);
        assert_eq!(nonempty_subsets(4).count(), 15);
        assert_eq!(NodeSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn universe_lookup() {
        let u = NodeUniverse::new(["u1", "u2", "v1", "v2"]).unwrap();
        assert_eq!(u.index_of("v1").unwrap(), 2);
        assert!(matches!(u.index_of("zz"), Err(Error::UnknownLabel(_))));
        let s = u.set_from_labels(["v2", "u1"]).unwrap();
        assert_eq!(u.sorted_labels(s), vec!["u1", "v2"]);
        assert!(u.check(NodeSet::singleton(4)).is_err());
        assert!(NodeUniverse::new(["a", "a"]).is_err());
        assert!(NodeUniverse::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn full_64_does_not_overflow() {
        assert_eq!(NodeSet::full(64).len(), 64);
        assert_eq!(NodeSet::full(0), NodeSet::EMPTY);
    }
}
