//! Acceptance suite. Runs every criterion in sequence, prints one line per
//! criterion and exits nonzero if any fails or overruns its time limit.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use hyperinfluence::analysis::exact::sequence_probability;
use hyperinfluence::random::ModelGenerator;
use hyperinfluence::transform::{sbfd_to_gt, MAX_ENUMERATION_NODES};
use hyperinfluence::*;

type Outcome = Result<String, String>;

/// Id, name, time limit, check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(x: &str) -> Probability {
    Probability::parse(x).unwrap()
}

fn seeds(n: usize) -> Vec<NodeSet> {
    assert!(n <= MAX_ENUMERATION_NODES);
    (1..1u64 << n).map(NodeSet::from_bits).collect()
}

fn exact_all(m: &Model) -> Result<Vec<SequenceDistribution>, String> {
    exact_distributions(m, &seeds(m.node_count()), DEFAULT_BUDGET).map_err(|e| e.to_string())
}

fn same_laws(a: &Model, b: &Model, what: &str) -> Result<(), String> {
    let (da, db) = (exact_all(a)?, exact_all(b)?);
    for (x, y) in da.iter().zip(&db) {
        ensure(x.entries() == y.entries(), || {
            format!("{what}: laws differ from seed {:?}", x.seed())
        })?;
    }
    Ok(())
}

/// Forward-chaining closure, one synchronous round at a time.
fn closure_rounds(n: usize, edges: &[(usize, NodeSet)], seed: NodeSet) -> Vec<NodeSet> {
    let mut rounds = vec![seed];
    while rounds.len() < n {
        let cur = *rounds.last().unwrap();
        let mut next = cur;
        for &(head, tail) in edges {
            if tail.is_subset(cur) {
                next.insert(head);
            }
        }
        rounds.push(next);
    }
    rounds
}

fn fixture_stats(seed: &str) -> OneStepStats {
    let m: Model = reverse_triggering_fixture().into();
    let s = m.universe().set_from_labels([seed]).unwrap();
    let d = exact_distribution(&m, s, DEFAULT_BUDGET).unwrap();
    one_step_statistics(&d, &[2, 3]).unwrap()
}

fn counterexample() -> Outcome {
    let (s1, s2) = (fixture_stats("u1"), fixture_stats("u2"));
    let (half, tenth) = (p("1/2"), p("1/10"));
    ensure(s1.single(2) == Some(&half) && s1.single(3) == Some(&half), || format!("{{u1}} singles {:?}", s1.single))?;
    ensure(s1.pair(2, 3) == Some(&Probability::zero()), || format!("{{u1}} pair {:?}", s1.pair))?;
    ensure(s2.single(2) == Some(&tenth) && s2.single(3) == Some(&tenth), || format!("{{u2}} singles {:?}", s2.single))?;
    ensure(s2.pair(2, 3) == Some(&tenth), || format!("{{u2}} pair {:?}", s2.pair))?;
    let cert = cgt_violation_certificate(&s1, &s2, 2, 3)
        .map_err(|e| e.to_string())?
        .ok_or("no certificate")?;
    ensure(cert.dominant.seed == s1.seed && cert.dominated.seed == s2.seed, || "wrong orientation".into())?;
    Ok("(1/2, 1/2, 0) vs (1/10, 1/10, 1/10), certificate issued".into())
}

fn gt_instances() -> Vec<GeneralThresholdModel> {
    (0..100u64).map(|i| ModelGenerator::new(2 + (i % 3) as usize, 1000 + i).gt()).collect()
}

fn gt_equals_boolean_model() -> Outcome {
    let mut seeds_checked = 0;
    for gt in gt_instances() {
        let sbfd = gt_to_sbfd(&gt).map_err(|e| e.to_string())?;
        seeds_checked += (1usize << gt.universe.len()) - 1;
        same_laws(&gt.into(), &sbfd.into(), "GT vs Boolean-function model")?;
    }
    Ok(format!("100 models, {seeds_checked} seed sets, exact equality"))
}

fn round_trip() -> Outcome {
    let mut values = 0;
    for gt in gt_instances() {
        let back = sbfd_to_gt(&gt_to_sbfd(&gt).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let n = gt.universe.len();
        for v in 0..n {
            for s in NodeSet::full(n).without(v).subsets() {
                let (a, b) = (gt.tables[v].value(s), back.tables[v].value(s));
                ensure(a == b, || format!("f_{v}({s:?}): {a} became {b}"))?;
                values += 1;
            }
        }
    }
    Ok(format!("100 models, {values} set values reproduced"))
}

fn hypergraph_lemma() -> Outcome {
    let mut canonical = 0;
    for i in 0..200u64 {
        let g = ModelGenerator::new(4, 2000 + i).hypergraph(4);
        let edges: Vec<(usize, NodeSet)> = g.edges().map(|e| (e.head, e.tail)).collect();
        let dnf = hypergraph_to_dnf(&g);
        for s in seeds(4) {
            let via_dnf = sbfd_diffuse(&dnf, s).map_err(|e| e.to_string())?;
            let via_bfs = bfs_propagate(&g, s).map_err(|e| e.to_string())?;
            ensure(via_dnf == via_bfs, || format!("graph {i}, seed {s:?}: {via_dnf:?} vs {via_bfs:?}"))?;
            ensure(via_bfs.sets() == closure_rounds(4, &edges, s), || format!("graph {i}, seed {s:?}: BFS disagrees with closure"))?;
        }
        let is_canonical = edges
            .iter()
            .all(|&(h, t)| !edges.iter().any(|&(h2, t2)| h2 == h && t2 != t && t2.is_subset(t)));
        if is_canonical {
            canonical += 1;
            let back = dnf_to_hypergraph(&dnf).map_err(|e| e.to_string())?;
            ensure(back == g, || format!("graph {i}: round trip changed the edge set"))?;
        }
    }
    Ok(format!("200 graphs x 15 seeds, {canonical} canonical round trips"))
}

fn closed_form() -> Outcome {
    let mut checked = 0;
    for i in 0..50u64 {
        let m = ModelGenerator::new(4, 3000 + i).sbfd();
        let model: Model = m.clone().into();
        for d in exact_all(&model)? {
            for (seq, prob) in d.entries() {
                let closed = sequence_probability(&m, seq).map_err(|e| e.to_string())?;
                ensure(&closed == prob, || format!("model {i}: {seq:?} closed form {closed}, enumeration {prob}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("50 models, {checked} support sequences match"))
}

fn triggering_degeneracy() -> Outcome {
    for i in 0..50u64 {
        let m = ModelGenerator::new(4, 4000 + i).triggering();
        let ht = triggering_to_hypergraph_triggering(&m);
        same_laws(&m.into(), &ht.into(), &format!("triggering model {i}"))?;
    }
    Ok("50 models x 15 seeds, exact equality".into())
}

fn two_node_gt() -> Model {
    let u = NodeUniverse::new(["a", "b"]).unwrap();
    let tb = ThresholdTable::from_entries(1, [(NodeSet::singleton(0), p("1/2"))]);
    GeneralThresholdModel::new(u, vec![ThresholdTable::new(0), tb]).unwrap().into()
}

fn mc_consistency() -> Outcome {
    const TRIALS: u64 = 100_000;
    const RNG_SEED: u64 = 20_240_601;
    const TOL: f64 = 0.02;
    let mut worst: f64 = 0.0;
    let fixture: Model = reverse_triggering_fixture().into();
    for (m, s) in seeds(4).into_iter().map(|s| (&fixture, s)).chain([(&two_node_gt(), NodeSet::singleton(0))]) {
        let exact = exact_distribution(m, s, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let est = mc_estimate(m, s, TRIALS, RNG_SEED).map_err(|e| e.to_string())?;
        let tv = tv_distance(&est, &exact).map_err(|e| e.to_string())?;
        ensure(tv <= TOL, || format!("{} seed {s:?}: tv {tv} > {TOL}", m.kind()))?;
        worst = worst.max(tv);
    }
    Ok(format!("16 seed/model pairs, max tv {worst:.4} <= {TOL}"))
}

fn parameter_counts() -> Outcome {
    // n(2^(n-1) - 1) and n 2^(2^(n-1) - 1), evaluated in machine integers
    for n in [3u32, 4] {
        let gt = n as u128 * ((1u128 << (n - 1)) - 1);
        let ht = n as u128 * (1u128 << ((1u32 << (n - 1)) - 1));
        let (a, b) = parameter_count(n as usize).map_err(|e| e.to_string())?;
        ensure(a == gt.into() && b == ht.into(), || format!("n={n}: got ({a}, {b}), want ({gt}, {ht})"))?;
    }
    let expected = [(3, (9u32, 24u32)), (4, (28, 512))];
    for (n, (gt, ht)) in expected {
        let (a, b) = parameter_count(n).map_err(|e| e.to_string())?;
        ensure(a == gt.into() && b == ht.into(), || format!("n={n}: got ({a}, {b})"))?;
    }
    Ok("(9, 24) and (28, 512)".into())
}

fn certificate_soundness() -> Outcome {
    let mut comparisons = 0;
    for i in 0..100u64 {
        let atoms = 1 + (i % 4) as usize;
        let m: Model = ModelGenerator::new(4, 5000 + i).cgt(atoms).into();
        let stats: Vec<OneStepStats> = exact_all(&m)?
            .iter()
            .map(|d| one_step_statistics(d, &[0, 1, 2, 3]).unwrap())
            .collect();
        for (a, sa) in stats.iter().enumerate() {
            for sb in &stats[a + 1..] {
                for v1 in 0..4 {
                    for v2 in v1 + 1..4 {
                        ensure(sa.pair(v1, v2).unwrap() <= sa.single(v1).unwrap().min(sa.single(v2).unwrap()), || {
                            format!("model {i}: pair above a single")
                        })?;
                        let cert = cgt_violation_certificate(sa, sb, v1, v2).map_err(|e| e.to_string())?;
                        ensure(cert.is_none(), || format!("model {i}: certificate {cert:?}"))?;
                        comparisons += 1;
                    }
                }
            }
        }
    }
    Ok(format!("100 models, {comparisons} comparisons, no certificate"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "counterexample statistics", Duration::from_secs(1), counterexample),
        (2, "threshold vs Boolean-function equivalence", Duration::from_secs(60), gt_equals_boolean_model),
        (3, "threshold round trip", Duration::from_secs(10), round_trip),
        (4, "hypergraph BFS vs Boolean dynamics", Duration::from_secs(30), hypergraph_lemma),
        (5, "closed-form sequence probability", Duration::from_secs(60), closed_form),
        (6, "triggering degeneracy", Duration::from_secs(30), triggering_degeneracy),
        (7, "Monte-Carlo consistency", Duration::from_secs(30), mc_consistency),
        (8, "parameter counts", Duration::from_secs(1), parameter_counts),
        (9, "certificate soundness", Duration::from_secs(60), certificate_soundness),
    ];
    let mut failed = BTreeSet::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over time limit")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed.insert(id);
        }
        println!("criterion {id} {status} [{name}] {:.2}s / {}s: {detail}", elapsed.as_secs_f64(), limit.as_secs());
    }
    if !failed.is_empty() {
        println!("acceptance FAILED: criteria {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance passed: 9/9 criteria");
}
