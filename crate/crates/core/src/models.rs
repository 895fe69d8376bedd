//! The stochastic diffusion model classes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::dist::FiniteSupportDistribution;
use crate::dnf::MonotoneDnf;
use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph};
use crate::nodes::{NodeSet, NodeUniverse};
use crate::threshold::{ThresholdTable, ThresholdVector};
use crate::validate::{ValidationReport, Violation};

/// Set of hyperedges sharing one head, as sampled by a hypergraph-triggering node.
pub type EdgeSet = BTreeSet<Hyperedge>;

/// General threshold model: one threshold function per node, i.i.d. uniform thresholds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralThresholdModel {
    pub universe: NodeUniverse,
    pub tables: Vec<ThresholdTable>,
}

/// Triggering model: each node samples the set of nodes that can activate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriggeringModel {
    pub universe: NodeUniverse,
    pub triggers: Vec<FiniteSupportDistribution<NodeSet>>,
}

/// Node-independent hypergraph model: each node samples its incoming hyperedges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphTriggeringModel {
    pub universe: NodeUniverse,
    pub incoming: Vec<FiniteSupportDistribution<EdgeSet>>,
}

/// Stochastic hypergraph diffusion with an arbitrary joint law over whole hypergraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelatedShdModel {
    pub universe: NodeUniverse,
    pub graphs: FiniteSupportDistribution<Hypergraph>,
}

/// Node-independent Boolean-function model (Boolean-function triggering).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SbfdModel {
    pub universe: NodeUniverse,
    pub functions: Vec<FiniteSupportDistribution<MonotoneDnf>>,
}

/// Boolean-function model with a joint law over whole function profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelatedSbfdModel {
    pub universe: NodeUniverse,
    pub profiles: FiniteSupportDistribution<Vec<MonotoneDnf>>,
}

/// Threshold model whose threshold vector follows a finite joint law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgtModel {
    pub universe: NodeUniverse,
    pub tables: Vec<ThresholdTable>,
    pub thresholds: FiniteSupportDistribution<ThresholdVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    Gt,
    Triggering,
    HypergraphTriggering,
    Shd,
    Sbfd,
    SbfdCorrelated,
    Cgt,
}

impl ModelKind {
    pub const ALL: [ModelKind; 7] = [
        ModelKind::Gt,
        ModelKind::Triggering,
        ModelKind::HypergraphTriggering,
        ModelKind::Shd,
        ModelKind::Sbfd,
        ModelKind::SbfdCorrelated,
        ModelKind::Cgt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Gt => "gt",
            ModelKind::Triggering => "triggering",
            ModelKind::HypergraphTriggering => "hypergraph_triggering",
            ModelKind::Shd => "shd",
            ModelKind::Sbfd => "sbfd",
            ModelKind::SbfdCorrelated => "sbfd_correlated",
            ModelKind::Cgt => "cgt",
        }
    }

    pub fn is_node_independent(self) -> bool {
        !matches!(self, ModelKind::Shd | ModelKind::SbfdCorrelated | ModelKind::Cgt)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Schema(format!("unknown model_kind `{s}`")))
    }
}

/// Any model class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Gt(GeneralThresholdModel),
    Triggering(TriggeringModel),
    HypergraphTriggering(HypergraphTriggeringModel),
    Shd(CorrelatedShdModel),
    Sbfd(SbfdModel),
    SbfdCorrelated(CorrelatedSbfdModel),
    Cgt(CgtModel),
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Gt(_) => ModelKind::Gt,
            Model::Triggering(_) => ModelKind::Triggering,
            Model::HypergraphTriggering(_) => ModelKind::HypergraphTriggering,
            Model::Shd(_) => ModelKind::Shd,
            Model::Sbfd(_) => ModelKind::Sbfd,
            Model::SbfdCorrelated(_) => ModelKind::SbfdCorrelated,
            Model::Cgt(_) => ModelKind::Cgt,
        }
    }

    pub fn universe(&self) -> &NodeUniverse {
        match self {
            Model::Gt(m) => &m.universe,
            Model::Triggering(m) => &m.universe,
            Model::HypergraphTriggering(m) => &m.universe,
            Model::Shd(m) => &m.universe,
            Model::Sbfd(m) => &m.universe,
            Model::SbfdCorrelated(m) => &m.universe,
            Model::Cgt(m) => &m.universe,
        }
    }

    pub fn node_count(&self) -> usize {
        self.universe().len()
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Model::Gt(m) => m.validate(),
            Model::Triggering(m) => m.validate(),
            Model::HypergraphTriggering(m) => m.validate(),
            Model::Shd(m) => m.validate(),
            Model::Sbfd(m) => m.validate(),
            Model::SbfdCorrelated(m) => m.validate(),
            Model::Cgt(m) => m.validate(),
        }
    }
}

macro_rules! impl_from_model {
    ($($variant:ident($ty:ty)),* $(,)?) => {
        $(impl From<$ty> for Model {
            fn from(m: $ty) -> Model {
                Model::$variant(m)
            }
        })*
    };
}

impl_from_model!(
    Gt(GeneralThresholdModel),
    Triggering(TriggeringModel),
    HypergraphTriggering(HypergraphTriggeringModel),
    Shd(CorrelatedShdModel),
    Sbfd(SbfdModel),
    SbfdCorrelated(CorrelatedSbfdModel),
    Cgt(CgtModel),
);

/// Checks every structural invariant of `model`. Never fails; see the report.
pub fn validate_model(model: &Model) -> ValidationReport {
    model.validate()
}

fn check_count(report: &mut ValidationReport, what: &str, got: usize, n: usize) {
    if got != n {
        report.push(Violation::new("", format!("expected one {what} per node ({n}), got {got}")));
    }
}

fn validate_tables(report: &mut ValidationReport, universe: &NodeUniverse, tables: &[ThresholdTable]) {
    let n = universe.len();
    check_count(report, "threshold table", tables.len(), n);
    for (v, t) in tables.iter().enumerate().take(n) {
        let loc = format!("node {}", universe.name(v));
        if t.owner() != v {
            report.push(Violation::new(loc.clone(), "table owner does not match its node"));
        }
        report.extend_at(&loc, t.violations(n));
    }
}

fn validate_profile(n: usize, profile: &[MonotoneDnf]) -> Vec<Violation> {
    let mut out = Vec::new();
    if profile.len() != n {
        out.push(Violation::new("", format!("expected {n} functions, got {}", profile.len())));
    }
    for (v, g) in profile.iter().enumerate() {
        if g.owner() != v {
            out.push(Violation::new(format!("function {v}"), "owner does not match its node"));
        }
        for mut x in g.violations(n) {
            x.location = format!("function {v}, {}", x.location);
            out.push(x);
        }
    }
    out
}

impl GeneralThresholdModel {
    pub fn new(universe: NodeUniverse, tables: Vec<ThresholdTable>) -> Result<Self> {
        let m = GeneralThresholdModel { universe, tables };
        m.validate().into_result()?;
        Ok(m)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        validate_tables(&mut r, &self.universe, &self.tables);
        r
    }
}

impl TriggeringModel {
    pub fn new(universe: NodeUniverse, triggers: Vec<FiniteSupportDistribution<NodeSet>>) -> Result<Self> {
        let m = TriggeringModel { universe, triggers };
        m.validate().into_result()?;
        Ok(m)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.universe.len();
        check_count(&mut r, "triggering distribution", self.triggers.len(), n);
        for (v, d) in self.triggers.iter().enumerate().take(n) {
            let loc = format!("node {}", self.universe.name(v));
            r.extend_at(&loc, d.violations());
            for (i, (_, t)) in d.iter().enumerate() {
                if t.contains(v) {
                    r.push(Violation::new(format!("{loc}, atom {i}"), "triggering set contains the node itself"));
                }
                if !t.is_subset(NodeSet::full(n)) {
                    r.push(Violation::new(format!("{loc}, atom {i}"), "triggering set leaves the universe"));
                }
            }
        }
        r
    }
}

impl HypergraphTriggeringModel {
    pub fn new(universe: NodeUniverse, incoming: Vec<FiniteSupportDistribution<EdgeSet>>) -> Result<Self> {
        let m = HypergraphTriggeringModel { universe, incoming };
        m.validate().into_result()?;
        Ok(m)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.universe.len();
        check_count(&mut r, "hyperedge distribution", self.incoming.len(), n);
        for (v, d) in self.incoming.iter().enumerate().take(n) {
            let loc = format!("node {}", self.universe.name(v));
            r.extend_at(&loc, d.violations());
            for (i, (_, edges)) in d.iter().enumerate() {
                let at = format!("{loc}, atom {i}");
                for e in edges {
                    if e.head != v {
                        r.push(Violation::new(at.clone(), "edge head differs from the sampling node"));
                    }
                    r.extend_at(&at, e.violations(n));
                }
            }
        }
        r
    }
}

impl CorrelatedShdModel {
    pub fn new(universe: NodeUniverse, graphs: FiniteSupportDistribution<Hypergraph>) -> Result<Self> {
        let m = CorrelatedShdModel { universe, graphs };
        m.validate().into_result()?;
        Ok(m)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.universe.len();
        r.extend_at("hypergraph distribution", self.graphs.violations());
        for (i, (_, g)) in self.graphs.iter().enumerate() {
            let at = format!("atom {i}");
            if g.node_count() != n {
                r.push(Violation::new(at.clone(), "hypergraph is over a different universe"));
            }
            r.extend_at(&at, g.violations());
        }
        r
    }
}

impl SbfdModel {
    pub fn new(universe: NodeUniverse, functions: Vec<FiniteSupportDistribution<MonotoneDnf>>) -> Result<Self> {
        let m = SbfdModel { universe, functions };
        m.validate().into_result()?;
        Ok(m)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.universe.len();
        check_count(&mut r, "function distribution", self.functions.len(), n);
        for (v, d) in self.functions.iter().enumerate().take(n) {
            let loc = format!("node {}", self.universe.name(v));
            r.extend_at(&loc, d.violations());
            for (i, (_, g)) in d.iter().enumerate() {
                let at = format!("{loc}, atom {i}");
                if g.owner() != v {
                    r.push(Violation::new(at.clone(), "function owner does not match its node"));
                }
                r.extend_at(&at, g.violations(n));
            }
        }
        r
    }
}

impl CorrelatedSbfdModel {
    pub fn new(universe: NodeUniverse, profiles: FiniteSupportDistribution<Vec<MonotoneDnf>>) -> Result<Self> {
        let m = CorrelatedSbfdModel { universe, profiles };
        m.validate().into_result()?;
        Ok(m)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.universe.len();
        r.extend_at("profile distribution", self.profiles.violations());
        for (i, (_, profile)) in self.profiles.iter().enumerate() {
            r.extend_at(&format!("atom {i}"), validate_profile(n, profile));
        }
        r
    }
}

impl CgtModel {
    pub fn new(
        universe: NodeUniverse,
        tables: Vec<ThresholdTable>,
        thresholds: FiniteSupportDistribution<ThresholdVector>,
    ) -> Result<Self> {
        let m = CgtModel {
            universe,
            tables,
            thresholds,
        };
        m.validate().into_result()?;
        Ok(m)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.universe.len();
        validate_tables(&mut r, &self.universe, &self.tables);
        r.extend_at("threshold distribution", self.thresholds.violations());
        for (i, (_, theta)) in self.thresholds.iter().enumerate() {
            r.extend_at(&format!("threshold atom {i}"), theta.violations(n));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::Probability;

    fn p(s: &str) -> Probability {
        Probability::parse(s).unwrap()
    }

    #[test]
    fn gt_with_nonzero_empty_entry_is_reported() {
        let u = NodeUniverse::new(["a", "b"]).unwrap();
        let m = GeneralThresholdModel {
            universe: u,
            tables: vec![
                ThresholdTable::new(0),
                ThresholdTable::from_entries(1, [(NodeSet::EMPTY, p("1/2"))]),
            ],
        };
        let r = validate_model(&m.into());
        assert!(r.violations.iter().any(|v| v.rule == "f(∅) must be 0"), "{r}");
    }

    #[test]
    fn triggering_mass_sum_reported() {
        let u = NodeUniverse::new(["a", "b"]).unwrap();
        let m = TriggeringModel {
            universe: u,
            triggers: vec![
                FiniteSupportDistribution::point_mass(NodeSet::EMPTY),
                FiniteSupportDistribution::new(vec![
                    (p("1/2"), NodeSet::singleton(0)),
                    (p("1/3"), NodeSet::EMPTY),
                ]),
            ],
        };
        let r = validate_model(&m.into());
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].rule.starts_with("mass sum ≠ 1"));
        assert!(r.violations[0].location.contains("node b"));
    }

    #[test]
    fn triggering_self_loop_reported() {
        let u = NodeUniverse::new(["a"]).unwrap();
        let err = TriggeringModel::new(u, vec![FiniteSupportDistribution::point_mass(NodeSet::singleton(0))]);
        assert!(matches!(err, Err(Error::Invalid(_))));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ModelKind::ALL {
            assert_eq!(k.as_str().parse::<ModelKind>().unwrap(), k);
        }
        assert!("ic".parse::<ModelKind>().is_err());
    }
}
