//! Stochastic influence-diffusion models on directed hypergraphs.
//!
//! Model classes: general threshold, triggering, hypergraph triggering,
//! stochastic hypergraph (correlated), Boolean-function (node-independent and
//! correlated) and correlated threshold. Every class induces a distribution
//! over progressive activation sequences per seed set; this crate computes
//! those distributions exactly (with rational arithmetic) or by seeded
//! Monte-Carlo, converts between the classes, and checks equivalence.

mod config;
pub mod dist;
pub mod dnf;
pub mod engine;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod models;
pub mod nodes;
pub mod prob;
pub mod random;
pub mod report;
pub mod rng;
pub mod sample;
pub mod sequence;
pub mod threshold;
pub mod transform;
pub mod validate;

pub mod analysis;

pub use analysis::cgt::{
    cgt_violation_certificate, one_step_statistics, reverse_triggering_fixture, CgtCertificate, OneStepStats,
};
pub use analysis::compare::{equivalence_report, tv_distance, CompareMode, EquivalenceReport};
pub use analysis::exact::{
    exact_distribution, exact_distributions, sequence_probability, SequenceDistribution, DEFAULT_BUDGET,
};
pub use analysis::mc::{mc_estimate, EmpiricalDistribution};
pub use dist::FiniteSupportDistribution;
pub use dnf::{antichain_minimize, MonotoneDnf};
pub use engine::{bfs_propagate, bfs_step, boolean_transition, gt_diffuse_fixed, sbfd_diffuse};
pub use error::{Error, Result};
pub use hypergraph::{Hyperedge, Hypergraph};
pub use io::{parse_model, serialize_model};
pub use models::{
    validate_model, CgtModel, CorrelatedSbfdModel, CorrelatedShdModel, GeneralThresholdModel,
    HypergraphTriggeringModel, Model, ModelKind, SbfdModel, TriggeringModel,
};
pub use nodes::{NodeSet, NodeUniverse};
pub use prob::Probability;
pub use sample::{cgt_diffuse, sample_diffuse};
pub use sequence::ProgressiveSequence;
pub use threshold::{ThresholdTable, ThresholdVector};
pub use transform::{dnf_to_hypergraph, gt_to_sbfd, hypergraph_to_dnf, parameter_count, sbfd_to_gt, triggering_to_hypergraph_triggering};
pub use validate::{ValidationReport, Violation};
