//! JSON renderings of analysis results, keyed by node label.

use serde_json::{json, Value};

use crate::analysis::cgt::{ActivationTriple, CgtCertificate, OneStepStats};
use crate::analysis::compare::{CompareMode, EquivalenceReport, SeedVerdict, Weight};
use crate::analysis::exact::SequenceDistribution;
use crate::analysis::mc::EmpiricalDistribution;
use crate::error::Error;
use crate::nodes::{NodeSet, NodeUniverse};
use crate::sequence::ProgressiveSequence;
use crate::validate::ValidationReport;

/// Frequencies and distances are printed with this many significant digits.
pub const FLOAT_DIGITS: usize = 12;

pub fn float(x: f64) -> Value {
    Value::String(format_float(x))
}

pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.*}", FLOAT_DIGITS, 0.0);
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (FLOAT_DIGITS as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn set(u: &NodeUniverse, s: NodeSet) -> Value {
    json!(u.sorted_labels(s))
}

/// All `n` sets, padded with the final set.
pub fn sequence(u: &NodeUniverse, seq: &ProgressiveSequence) -> Value {
    Value::Array(seq.sets().iter().map(|s| set(u, *s)).collect())
}

pub fn exact_distribution(u: &NodeUniverse, d: &SequenceDistribution) -> Value {
    let entries: Vec<Value> = d
        .entries()
        .iter()
        .map(|(seq, p)| json!({ "sequence": sequence(u, seq), "p": p.to_string() }))
        .collect();
    json!({
        "seed": set(u, d.seed()),
        "support": d.support_len(),
        "total": d.total().to_string(),
        "sequences": entries,
    })
}

pub fn empirical_distribution(u: &NodeUniverse, d: &EmpiricalDistribution) -> Value {
    let entries: Vec<Value> = d
        .counts()
        .iter()
        .map(|(seq, &c)| {
            json!({
                "sequence": sequence(u, seq),
                "count": c,
                "frequency": float(c as f64 / d.trials() as f64),
            })
        })
        .collect();
    json!({
        "seed": set(u, d.seed()),
        "trials": d.trials(),
        "sequences": entries,
    })
}

fn weight(w: &Weight) -> Value {
    match w {
        Weight::Exact(p) => Value::String(p.to_string()),
        Weight::Frequency(f) => float(*f),
    }
}

fn verdict(u: &NodeUniverse, v: &SeedVerdict) -> Value {
    let mut out = json!({ "seed": set(u, v.seed), "pass": v.pass });
    if let Some(tv) = v.tv {
        out["tv"] = float(tv);
    }
    if let Some(w) = &v.witness {
        out["witness"] = json!({
            "sequence": sequence(u, &w.sequence),
            "left": weight(&w.left),
            "right": weight(&w.right),
        });
    }
    out
}

pub fn equivalence(u: &NodeUniverse, r: &EquivalenceReport) -> Value {
    let mode = match &r.mode {
        CompareMode::Exact { .. } => json!({ "mode": "exact" }),
        CompareMode::MonteCarlo {
            trials,
            rng_seed,
            tolerance,
        } => json!({ "mode": "mc", "trials": trials, "rng_seed": rng_seed, "tolerance": tolerance }),
    };
    let failures: Vec<Value> = r.verdicts.iter().filter(|v| !v.pass).map(|v| verdict(u, v)).collect();
    json!({
        "mode": mode,
        "seeds_checked": r.verdicts.len(),
        "exhaustive": r.exhaustive,
        "all_passed": r.all_passed(),
        "equivalent": r.equivalent(),
        "failures": failures,
    })
}

pub fn one_step(u: &NodeUniverse, s: &OneStepStats) -> Value {
    let single: serde_json::Map<String, Value> = s
        .single
        .iter()
        .map(|(v, p)| (u.name(*v).to_string(), Value::String(p.to_string())))
        .collect();
    let pair: Vec<Value> = s
        .pair
        .iter()
        .map(|((a, b), p)| json!({ "targets": [u.name(*a), u.name(*b)], "p": p.to_string() }))
        .collect();
    json!({ "seed": set(u, s.seed), "single": single, "pair": pair })
}

fn triple(u: &NodeUniverse, t: &ActivationTriple) -> Value {
    json!({
        "seed": set(u, t.seed),
        "first": t.first.to_string(),
        "second": t.second.to_string(),
        "both": t.both.to_string(),
    })
}

pub fn certificate(u: &NodeUniverse, c: &CgtCertificate) -> Value {
    json!({
        "targets": [u.name(c.targets.0), u.name(c.targets.1)],
        "dominant": triple(u, &c.dominant),
        "dominated": triple(u, &c.dominated),
        "violated": c.violated_inequality(),
    })
}

pub fn validation(r: &ValidationReport) -> Value {
    json!({ "valid": r.is_ok(), "violations": r.violations })
}

pub fn error(e: &Error) -> Value {
    let mut out = json!({ "error": e.kind(), "message": e.to_string() });
    match e {
        Error::Invalid(r) => out["violations"] = json!(r.violations),
        Error::Syntax { line, column, .. } => {
            out["line"] = json!(line);
            out["column"] = json!(column);
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_float(0.5), "0.500000000000");
        assert_eq!(format_float(0.0), "0.000000000000");
        assert_eq!(format_float(1.0), "1.00000000000");
        assert_eq!(format_float(0.0125), "0.0125000000000");
    }
}
