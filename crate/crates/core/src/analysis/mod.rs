//! Sequence distributions: exact enumeration, the closed form for
//! node-independent models, Monte-Carlo estimation, equivalence checks and
//! the correlated-threshold counterexample machinery.

pub mod cgt;
pub mod compare;
pub mod exact;
pub mod mc;
