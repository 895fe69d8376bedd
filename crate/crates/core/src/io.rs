//! JSON model files.
//!
//! ```json
//! { "format_version": 1, "model_kind": "gt", "nodes": ["a", "b"],
//!   "payload": { "b": [ { "set": ["a"], "value": "1/2" } ] } }
//! ```
//!
//! Probabilities are strings, either `"num/den"` or a plain decimal, and are
//! read exactly. Nodes are referenced by label. Per-node payload maps may omit
//! nodes, which then get their trivial law (no threshold entries, an empty
//! triggering set, no incoming edges, the constant-0 function). The payload
//! layout of each kind is listed in the project README.
//!
//! [`serialize_model`] writes the canonical form: sorted object keys, every
//! node present in per-node maps, set members sorted by label, probabilities
//! as reduced `num/den`, two-space indentation and a trailing newline.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::dist::FiniteSupportDistribution;
use crate::dnf::MonotoneDnf;
use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph};
use crate::models::*;
use crate::nodes::{NodeSet, NodeUniverse};
use crate::prob::Probability;
use crate::threshold::{ThresholdTable, ThresholdVector};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format_version: u32,
    model_kind: String,
    nodes: Vec<String>,
    payload: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    set: Vec<String>,
    value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSetAtom {
    p: String,
    set: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTailsAtom {
    p: String,
    tails: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDnfAtom {
    p: String,
    dnf: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    tail: Vec<String>,
    head: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraphAtom {
    p: String,
    edges: Vec<RawEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfileAtom {
    p: String,
    dnf: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawThetaAtom {
    p: String,
    theta: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCgt {
    tables: BTreeMap<String, Vec<RawEntry>>,
    thresholds: Vec<RawThetaAtom>,
}

fn payload<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Schema(format!("payload: {e}")))
}

/// Parses and validates a model file.
pub fn parse_model(text: &str) -> Result<Model> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let raw: RawFile = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    if raw.format_version != FORMAT_VERSION {
        return Err(Error::Schema(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            raw.format_version
        )));
    }
    let kind: ModelKind = raw.model_kind.parse()?;
    let universe = NodeUniverse::new(raw.nodes)?;
    let model = build(kind, universe, raw.payload)?;
    model.validate().into_result()?;
    Ok(model)
}

fn set_of(u: &NodeUniverse, labels: &[String]) -> Result<NodeSet> {
    u.set_from_labels(labels)
}

fn prob(text: &str) -> Result<Probability> {
    Probability::parse(text)
}

/// Per-node map to a dense vector, unknown labels rejected.
fn per_node<R, T>(
    u: &NodeUniverse,
    map: BTreeMap<String, R>,
    mut build: impl FnMut(usize, R) -> Result<T>,
    mut default: impl FnMut(usize) -> T,
) -> Result<Vec<T>> {
    let mut slots: Vec<Option<T>> = (0..u.len()).map(|_| None).collect();
    for (label, raw) in map {
        let v = u.index_of(&label)?;
        slots[v] = Some(build(v, raw)?);
    }
    Ok(slots
        .into_iter()
        .enumerate()
        .map(|(v, s)| s.unwrap_or_else(|| default(v)))
        .collect())
}

fn table(u: &NodeUniverse, v: usize, entries: Vec<RawEntry>) -> Result<ThresholdTable> {
    let mut t = ThresholdTable::new(v);
    for e in entries {
        let s = set_of(u, &e.set)?;
        if t.entries().contains_key(&s) {
            return Err(Error::Schema(format!("node {}: set {:?} listed twice", u.name(v), e.set)));
        }
        t.set(s, prob(&e.value)?);
    }
    Ok(t)
}

fn tables(u: &NodeUniverse, raw: BTreeMap<String, Vec<RawEntry>>) -> Result<Vec<ThresholdTable>> {
    per_node(u, raw, |v, e| table(u, v, e), ThresholdTable::new)
}

fn dnf(u: &NodeUniverse, v: usize, terms: &[Vec<String>]) -> Result<MonotoneDnf> {
    let terms = terms.iter().map(|t| set_of(u, t)).collect::<Result<_>>()?;
    Ok(MonotoneDnf::from_terms_unchecked(v, terms).sorted())
}

fn build(kind: ModelKind, u: NodeUniverse, raw: Value) -> Result<Model> {
    let n = u.len();
    Ok(match kind {
        ModelKind::Gt => {
            let tables = tables(&u, payload(raw)?)?;
            Model::Gt(GeneralThresholdModel { universe: u, tables })
        }
        ModelKind::Cgt => {
            let raw: RawCgt = payload(raw)?;
            let tables = tables(&u, raw.tables)?;
            let atoms = raw
                .thresholds
                .into_iter()
                .map(|a| {
                    let mut theta: Vec<Option<Probability>> = vec![None; n];
                    for (label, t) in a.theta {
                        theta[u.index_of(&label)?] = Some(prob(&t)?);
                    }
                    let theta = theta
                        .into_iter()
                        .enumerate()
                        .map(|(v, t)| t.ok_or_else(|| Error::Schema(format!("theta misses node {}", u.name(v)))))
                        .collect::<Result<_>>()?;
                    Ok((prob(&a.p)?, ThresholdVector(theta)))
                })
                .collect::<Result<_>>()?;
            Model::Cgt(CgtModel {
                universe: u,
                tables,
                thresholds: FiniteSupportDistribution::new(atoms),
            })
        }
        ModelKind::Triggering => {
            let raw: BTreeMap<String, Vec<RawSetAtom>> = payload(raw)?;
            let triggers = per_node(
                &u,
                raw,
                |_, atoms| {
                    let atoms = atoms
                        .into_iter()
                        .map(|a| Ok((prob(&a.p)?, set_of(&u, &a.set)?)))
                        .collect::<Result<_>>()?;
                    Ok(FiniteSupportDistribution::new(atoms))
                },
                |_| FiniteSupportDistribution::point_mass(NodeSet::EMPTY),
            )?;
            Model::Triggering(TriggeringModel { universe: u, triggers })
        }
        ModelKind::HypergraphTriggering => {
            let raw: BTreeMap<String, Vec<RawTailsAtom>> = payload(raw)?;
            let incoming = per_node(
                &u,
                raw,
                |v, atoms| {
                    let atoms = atoms
                        .into_iter()
                        .map(|a| {
                            let edges = a
                                .tails
                                .iter()
                                .map(|t| Ok(Hyperedge { head: v, tail: set_of(&u, t)? }))
                                .collect::<Result<EdgeSet>>()?;
                            Ok((prob(&a.p)?, edges))
                        })
                        .collect::<Result<_>>()?;
                    Ok(FiniteSupportDistribution::new(atoms))
                },
                |_| FiniteSupportDistribution::point_mass(EdgeSet::new()),
            )?;
            Model::HypergraphTriggering(HypergraphTriggeringModel { universe: u, incoming })
        }
        ModelKind::Shd => {
            let raw: Vec<RawGraphAtom> = payload(raw)?;
            let atoms = raw
                .into_iter()
                .map(|a| {
                    let edges = a
                        .edges
                        .iter()
                        .map(|e| {
                            Ok(Hyperedge {
                                head: u.index_of(&e.head)?,
                                tail: set_of(&u, &e.tail)?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok((prob(&a.p)?, Hypergraph::from_edges_unchecked(n, edges)))
                })
                .collect::<Result<_>>()?;
            Model::Shd(CorrelatedShdModel {
                universe: u,
                graphs: FiniteSupportDistribution::new(atoms),
            })
        }
        ModelKind::Sbfd => {
            let raw: BTreeMap<String, Vec<RawDnfAtom>> = payload(raw)?;
            let functions = per_node(
                &u,
                raw,
                |v, atoms| {
                    let atoms = atoms
                        .into_iter()
                        .map(|a| Ok((prob(&a.p)?, dnf(&u, v, &a.dnf)?)))
                        .collect::<Result<_>>()?;
                    Ok(FiniteSupportDistribution::new(atoms))
                },
                |v| FiniteSupportDistribution::point_mass(MonotoneDnf::constant_zero(v)),
            )?;
            Model::Sbfd(SbfdModel { universe: u, functions })
        }
        ModelKind::SbfdCorrelated => {
            let raw: Vec<RawProfileAtom> = payload(raw)?;
            let atoms = raw
                .into_iter()
                .map(|a| {
                    let profile = per_node(&u, a.dnf, |v, t| dnf(&u, v, &t), MonotoneDnf::constant_zero)?;
                    Ok((prob(&a.p)?, profile))
                })
                .collect::<Result<_>>()?;
            Model::SbfdCorrelated(CorrelatedSbfdModel {
                universe: u,
                profiles: FiniteSupportDistribution::new(atoms),
            })
        }
    })
}

fn labels(u: &NodeUniverse, s: NodeSet) -> Value {
    json!(u.sorted_labels(s))
}

fn sets_value(u: &NodeUniverse, sets: &[NodeSet]) -> Value {
    let mut out: Vec<Vec<String>> = sets.iter().map(|s| u.sorted_labels(*s)).collect();
    out.sort();
    json!(out)
}

fn node_map(u: &NodeUniverse, mut f: impl FnMut(usize) -> Value) -> Value {
    let map: Map<String, Value> = (0..u.len()).map(|v| (u.name(v).to_string(), f(v))).collect();
    Value::Object(map)
}

fn table_value(u: &NodeUniverse, t: &ThresholdTable) -> Value {
    let mut rows: Vec<(Vec<String>, String)> = t
        .entries()
        .iter()
        .map(|(s, p)| (u.sorted_labels(*s), p.to_string()))
        .collect();
    rows.sort();
    Value::Array(rows.into_iter().map(|(s, p)| json!({ "set": s, "value": p })).collect())
}

fn tables_value(u: &NodeUniverse, tables: &[ThresholdTable]) -> Value {
    node_map(u, |v| table_value(u, &tables[v]))
}

fn dnf_value(u: &NodeUniverse, g: &MonotoneDnf) -> Value {
    sets_value(u, g.minimal_true_sets())
}

fn atoms_value<C>(d: &FiniteSupportDistribution<C>, mut f: impl FnMut(&C) -> (&'static str, Value)) -> Value {
    Value::Array(
        d.iter()
            .map(|(p, c)| {
                let (key, body) = f(c);
                json!({ "p": p.to_string(), key: body })
            })
            .collect(),
    )
}

/// Canonical JSON for `model`.
pub fn model_to_value(model: &Model) -> Value {
    let u = model.universe();
    let payload = match model {
        Model::Gt(m) => tables_value(u, &m.tables),
        Model::Cgt(m) => json!({
            "tables": tables_value(u, &m.tables),
            "thresholds": atoms_value(&m.thresholds, |theta| {
                ("theta", node_map(u, |v| Value::String(theta.get(v).to_string())))
            }),
        }),
        Model::Triggering(m) => node_map(u, |v| atoms_value(&m.triggers[v], |s| ("set", labels(u, *s)))),
        Model::HypergraphTriggering(m) => node_map(u, |v| {
            atoms_value(&m.incoming[v], |edges| {
                let tails: Vec<NodeSet> = edges.iter().map(|e| e.tail).collect();
                ("tails", sets_value(u, &tails))
            })
        }),
        Model::Shd(m) => atoms_value(&m.graphs, |g| {
            let mut edges: Vec<(String, Vec<String>)> = g
                .edges()
                .map(|e| (u.name(e.head).to_string(), u.sorted_labels(e.tail)))
                .collect();
            edges.sort();
            let edges: Vec<Value> = edges
                .into_iter()
                .map(|(head, tail)| json!({ "head": head, "tail": tail }))
                .collect();
            ("edges", Value::Array(edges))
        }),
        Model::Sbfd(m) => node_map(u, |v| atoms_value(&m.functions[v], |g| ("dnf", dnf_value(u, g)))),
        Model::SbfdCorrelated(m) => atoms_value(&m.profiles, |profile| {
            ("dnf", node_map(u, |v| dnf_value(u, &profile[v])))
        }),
    };
    json!({
        "format_version": FORMAT_VERSION,
        "model_kind": model.kind().as_str(),
        "nodes": u.names(),
        "payload": payload,
    })
}

/// Canonical text: pretty-printed, keys sorted, trailing newline.
pub fn serialize_model(model: &Model) -> String {
    let mut s = serde_json::to_string_pretty(&model_to_value(model)).expect("JSON values always serialize");
    s.push('\n');
    s
}
