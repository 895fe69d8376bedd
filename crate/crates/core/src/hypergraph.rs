use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::nodes::NodeSet;
use crate::validate::Violation;

/// Directed hyperedge: once every tail node is active, `head` may activate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperedge {
    pub head: usize,
    pub tail: NodeSet,
}

impl Hyperedge {
    pub fn new(tail: NodeSet, head: usize) -> Result<Self> {
        let e = Hyperedge { head, tail };
        match e.problem() {
            None => Ok(e),
            Some(rule) => Err(Error::InvalidArgument(format!("hyperedge {tail:?} -> {head}: {rule}"))),
        }
    }

    fn problem(&self) -> Option<&'static str> {
        if self.tail.is_empty() {
            Some("tail must be nonempty")
        } else if self.tail.contains(self.head) {
            Some("head must not be in its own tail")
        } else {
            None
        }
    }

    pub fn violations(&self, n: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let loc = format!("edge {:?} -> {}", self.tail, self.head);
        if let Some(rule) = self.problem() {
            out.push(Violation::new(loc.clone(), rule));
        }
        if self.head >= n || !self.tail.is_subset(NodeSet::full(n)) {
            out.push(Violation::new(loc, "edge mentions nodes outside the universe"));
        }
        out
    }
}

/// Directed hypergraph over `n` nodes. Edges are kept deduplicated and ordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    n: usize,
    edges: BTreeSet<Hyperedge>,
}

impl Hypergraph {
    pub fn empty(n: usize) -> Self {
        Hypergraph { n, edges: BTreeSet::new() }
    }

    pub fn new<I: IntoIterator<Item = Hyperedge>>(n: usize, edges: I) -> Result<Self> {
        let g = Self::from_edges_unchecked(n, edges);
        let problems: Vec<_> = g.violations();
        if let Some(v) = problems.first() {
            return Err(Error::InvalidArgument(v.to_string()));
        }
        Ok(g)
    }

    pub fn from_edges_unchecked<I: IntoIterator<Item = Hyperedge>>(n: usize, edges: I) -> Self {
        Hypergraph {
            n,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = &Hyperedge> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn insert(&mut self, e: Hyperedge) -> bool {
        self.edges.insert(e)
    }

    /// Tails of the edges pointing at `v`.
    pub fn tails_into(&self, v: usize) -> impl Iterator<Item = NodeSet> + '_ {
        self.edges.iter().filter(move |e| e.head == v).map(|e| e.tail)
    }

    pub fn violations(&self) -> Vec<Violation> {
        self.edges.iter().flat_map(|e| e.violations(self.n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(Hyperedge::new(NodeSet::EMPTY, 1).is_err());
        assert!(Hyperedge::new(NodeSet::from_indices([0, 1]), 1).is_err());
        let e = Hyperedge::new(NodeSet::singleton(5), 0).unwrap();
        assert!(Hypergraph::new(3, [e]).is_err());
    }

    #[test]
    fn duplicates_collapse() {
        let e = Hyperedge::new(NodeSet::from_indices([0, 1]), 2).unwrap();
        let g = Hypergraph::new(3, [e, e]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.tails_into(2).collect::<Vec<_>>(), vec![e.tail]);
        assert_eq!(g.tails_into(0).count(), 0);
    }
}
