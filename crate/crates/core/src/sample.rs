//! Seeded sampling of single diffusion runs.

use crate::config::{Config, Structure};
use crate::dist::AtomSampler;
use crate::error::{Error, Result};
use crate::models::{CgtModel, Model};
use crate::nodes::NodeSet;
use crate::rng::{draw53, stream, uniform_threshold, JOINT_STREAM, UNIFORM_BITS};
use crate::sequence::ProgressiveSequence;
use crate::threshold::ThresholdVector;

/// Per-model sampling tables, built once and reused across trials.
///
/// Node-independent models draw node `v`'s atom from stream `v`; correlated
/// models draw their single joint atom from [`JOINT_STREAM`]. The general
/// threshold model draws `θ_v` uniformly (see [`uniform_threshold`]).
pub struct Sampler<'m> {
    model: &'m Model,
    structure: Structure<'m>,
    samplers: Vec<AtomSampler>,
}

impl<'m> Sampler<'m> {
    pub fn new(model: &'m Model) -> Self {
        let samplers = match model {
            Model::Gt(_) => Vec::new(),
            Model::Triggering(m) => m.triggers.iter().map(|d| d.sampler(UNIFORM_BITS)).collect(),
            Model::HypergraphTriggering(m) => m.incoming.iter().map(|d| d.sampler(UNIFORM_BITS)).collect(),
            Model::Sbfd(m) => m.functions.iter().map(|d| d.sampler(UNIFORM_BITS)).collect(),
            Model::Shd(m) => vec![m.graphs.sampler(UNIFORM_BITS)],
            Model::SbfdCorrelated(m) => vec![m.profiles.sampler(UNIFORM_BITS)],
            Model::Cgt(m) => vec![m.thresholds.sampler(UNIFORM_BITS)],
        };
        Sampler {
            model,
            structure: Structure::of(model),
            samplers,
        }
    }

    fn configure(&self, master_seed: u64, trial: u64) -> Config<'m> {
        if let Model::Gt(m) = self.model {
            let theta = (0..m.tables.len())
                .map(|v| uniform_threshold(&mut stream(master_seed, trial, v as u64)))
                .collect();
            return Config::Threshold {
                tables: &m.tables,
                theta: ThresholdVector(theta),
            };
        }
        let choice: Vec<usize> = if self.model.kind().is_node_independent() {
            self.samplers
                .iter()
                .enumerate()
                .map(|(v, s)| s.pick(draw53(&mut stream(master_seed, trial, v as u64))))
                .collect()
        } else {
            vec![self.samplers[0].pick(draw53(&mut stream(master_seed, trial, JOINT_STREAM)))]
        };
        self.structure.configure(&choice)
    }

    /// Trial `trial` of the experiment keyed by `master_seed`.
    pub fn run(&self, seed: NodeSet, master_seed: u64, trial: u64) -> Result<ProgressiveSequence> {
        let n = self.model.node_count();
        if seed.is_empty() {
            return Err(Error::EmptySeed);
        }
        self.model.universe().check(seed)?;
        Ok(self.configure(master_seed, trial).run(seed, n))
    }
}

/// One sampled run (trial 0 of `rng_seed`). Same inputs, same sequence.
pub fn sample_diffuse(model: &Model, seed: NodeSet, rng_seed: u64) -> Result<ProgressiveSequence> {
    Sampler::new(model).run(seed, rng_seed, 0)
}

/// Samples a threshold vector from the joint law, then runs the fixed-threshold diffusion.
pub fn cgt_diffuse(model: &CgtModel, seed: NodeSet, rng_seed: u64) -> Result<ProgressiveSequence> {
    let sampler = model.thresholds.sampler(UNIFORM_BITS);
    let i = sampler.pick(draw53(&mut stream(rng_seed, 0, JOINT_STREAM)));
    crate::engine::threshold_diffuse(&model.tables, &model.thresholds.atoms()[i].1, seed)
}
