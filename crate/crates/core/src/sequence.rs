use crate::error::{Error, Result};
use crate::nodes::NodeSet;

/// `(S_0, ..., S_{n-1})`: nested, frozen once it stops growing, nonempty start.
///
/// Always stored at full length `n`, padded with the fixed point, so that two
/// sequences compare equal exactly when they are the same progressive sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProgressiveSequence {
    sets: Vec<NodeSet>,
}

impl ProgressiveSequence {
    pub fn new(sets: Vec<NodeSet>, n: usize) -> Result<Self> {
        check_progressive(&sets, n)?;
        Ok(ProgressiveSequence { sets })
    }

    /// Iterates `step` from `seed` until it stabilizes or `n - 1` steps are
    /// taken, then pads. `step` must be inflationary (`S ⊆ step(S)`).
    pub fn from_dynamics(seed: NodeSet, n: usize, mut step: impl FnMut(NodeSet) -> NodeSet) -> Self {
        let mut sets = Vec::with_capacity(n);
        let mut cur = seed;
        sets.push(cur);
        while sets.len() < n {
            let next = step(cur);
            debug_assert!(cur.is_subset(next), "step must be inflationary");
            if next == cur {
                break;
            }
            cur = next;
            sets.push(cur);
        }
        sets.resize(n.max(1), cur);
        let seq = ProgressiveSequence { sets };
        debug_assert!(check_progressive(&seq.sets, n).is_ok());
        seq
    }

    pub fn constant(set: NodeSet, n: usize) -> Self {
        ProgressiveSequence { sets: vec![set; n.max(1)] }
    }

    pub fn sets(&self) -> &[NodeSet] {
        &self.sets
    }

    pub fn seed(&self) -> NodeSet {
        self.sets[0]
    }

    pub fn last(&self) -> NodeSet {
        *self.sets.last().expect("sequence is never empty")
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `S_t`, with `S_{-1} = ∅` and `S_t = S_{n-1}` beyond the end.
    pub fn at(&self, t: isize) -> NodeSet {
        if t < 0 {
            NodeSet::EMPTY
        } else {
            self.sets[(t as usize).min(self.sets.len() - 1)]
        }
    }

    /// The prefix up to stabilization.
    pub fn trimmed(&self) -> &[NodeSet] {
        let mut end = self.sets.len();
        while end > 1 && self.sets[end - 1] == self.sets[end - 2] {
            end -= 1;
        }
        &self.sets[..end]
    }
}

/// Checks (a) nesting, (b) freezing, (c) nonempty start, and length `n`.
pub fn check_progressive(sets: &[NodeSet], n: usize) -> Result<()> {
    if sets.len() != n {
        return Err(Error::NotProgressive(format!("length {} ≠ n = {n}", sets.len())));
    }
    if sets.first().is_none_or(|s0| s0.is_empty()) {
        return Err(Error::NotProgressive("S_0 is empty".into()));
    }
    let full = NodeSet::full(n);
    for t in 0..sets.len() {
        if !sets[t].is_subset(full) {
            return Err(Error::NotProgressive(format!("S_{t} leaves the universe")));
        }
        if t + 1 < sets.len() {
            if !sets[t].is_subset(sets[t + 1]) {
                return Err(Error::NotProgressive(format!("S_{t} ⊄ S_{}", t + 1)));
            }
            if sets[t] == sets[t + 1] && sets[t + 1..].iter().any(|s| *s != sets[t]) {
                return Err(Error::NotProgressive(format!("grows again after freezing at t = {t}")));
            }
        }
    }
    Ok(())
}
