use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperinfluence::analysis::cgt::cgt_violation_certificate;
use hyperinfluence::report;
use hyperinfluence::transform::{convert, MAX_ENUMERATION_NODES};
use hyperinfluence::{
    equivalence_report, exact_distributions, mc_estimate, one_step_statistics, parse_model, reverse_triggering_fixture,
    serialize_model, CompareMode, Error, Model, ModelKind, NodeSet, DEFAULT_BUDGET,
};

/// Seeds are processed in batches of this size so `--all-seeds --force`
/// never materialises every seed set at once.
const SEED_BATCH: u64 = 1 << 12;

#[derive(Parser)]
#[command(name = "hyperinfluence", version, about = "Influence diffusion models on hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file and list every violated rule.
    Validate { file: PathBuf },
    /// Exact sequence distributions.
    Exact {
        file: PathBuf,
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Monte-Carlo estimate of sequence distributions.
    Mc {
        file: PathBuf,
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
    /// Convert a model to another class and write it as a model file.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the sequence distributions of two models seed by seed.
    Compare {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Total-variation tolerance (Monte-Carlo mode).
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// One-step activation statistics and the correlated-threshold check.
    Stats {
        file: PathBuf,
        #[arg(long, value_name = "LABELS")]
        seed: String,
        #[arg(long, value_name = "LABELS")]
        seed2: Option<String>,
        #[arg(long, value_name = "LABELS")]
        targets: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Write a built-in model file.
    Fixture {
        #[arg(value_enum)]
        name: FixtureName,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SeedArgs {
    /// Comma-separated seed labels; repeat for several seed sets.
    #[arg(long = "seed", value_name = "LABELS", conflicts_with = "all_seeds")]
    seed: Vec<String>,
    /// Every nonempty seed set (refused above 20 nodes without --force).
    #[arg(long)]
    all_seeds: bool,
    #[arg(long, requires = "all_seeds")]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Gt,
    Sbfd,
    #[value(name = "hypergraph_triggering")]
    HypergraphTriggering,
}

impl From<Target> for ModelKind {
    fn from(t: Target) -> Self {
        match t {
            Target::Gt => ModelKind::Gt,
            Target::Sbfd => ModelKind::Sbfd,
            Target::HypergraphTriggering => ModelKind::HypergraphTriggering,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Mc,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    ReverseTriggering,
}

/// A failed run: exit code plus the error object printed on stderr.
struct Failure {
    code: u8,
    body: Value,
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource() { EXIT_RESOURCE } else { EXIT_FAILURE };
        Failure {
            code,
            body: report::error(&e),
        }
    }
}

fn usage(e: Error) -> Failure {
    let mut body = report::error(&e);
    body["error"] = json!("usage");
    Failure { code: EXIT_USAGE, body }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        body: json!({ "error": "io", "message": format!("{}: {e}", path.display()) }),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let body = json!({ "error": "usage", "message": e.render().to_string() });
            eprintln!("{}", pretty(&body));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", pretty(&f.body));
            ExitCode::from(f.code)
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn emit(v: &Value) {
    println!("{}", pretty(v));
}

fn read_model(path: &Path) -> Result<Model, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(parse_model(&text)?)
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn parse_set(model: &Model, labels: &str) -> Result<NodeSet, Failure> {
    let labels: Vec<&str> = labels.split(',').map(str::trim).filter(|l| !l.is_empty()).collect();
    if labels.is_empty() {
        return Err(usage(Error::EmptySeed));
    }
    model.universe().set_from_labels(labels).map_err(usage)
}

/// Explicit seed sets, or `None` for all of them.
fn explicit_seeds(model: &Model, args: &SeedArgs) -> Result<Option<Vec<NodeSet>>, Failure> {
    if args.all_seeds || args.seed.is_empty() {
        let n = model.node_count();
        if n > MAX_ENUMERATION_NODES && !args.force {
            return Err(Error::TooManyNodes {
                what: "--all-seeds without --force",
                n,
                limit: MAX_ENUMERATION_NODES,
            }
            .into());
        }
        return Ok(None);
    }
    args.seed.iter().map(|s| parse_set(model, s)).collect::<Result<_, _>>().map(Some)
}

/// Runs `f` over the chosen seeds in batches.
fn for_seed_batches(n: usize, seeds: Option<Vec<NodeSet>>, mut f: impl FnMut(&[NodeSet]) -> Result<(), Failure>) -> Result<(), Failure> {
    match seeds {
        Some(s) => f(&s),
        None => {
            let end: u64 = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
            let mut lo = 1u64;
            loop {
                let hi = lo.saturating_add(SEED_BATCH - 1).min(end);
                let batch: Vec<NodeSet> = (lo..=hi).map(NodeSet::from_bits).collect();
                f(&batch)?;
                if hi == end {
                    return Ok(());
                }
                lo = hi + 1;
            }
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Exact { file, seeds, budget } => {
            let model = read_model(&file)?;
            let chosen = explicit_seeds(&model, &seeds)?;
            let u = model.universe();
            let mut out = Vec::new();
            for_seed_batches(model.node_count(), chosen, |batch| {
                for d in exact_distributions(&model, batch, budget)? {
                    out.push(report::exact_distribution(u, &d));
                }
                Ok(())
            })?;
            emit(&json!({ "model_kind": model.kind().as_str(), "distributions": out }));
            Ok(0)
        }
        Command::Mc {
            file,
            seeds,
            trials,
            rng_seed,
        } => {
            let model = read_model(&file)?;
            let chosen = explicit_seeds(&model, &seeds)?;
            let u = model.universe();
            let mut out = Vec::new();
            for_seed_batches(model.node_count(), chosen, |batch| {
                for &s in batch {
                    let d = mc_estimate(&model, s, trials, rng_seed)?;
                    out.push(report::empirical_distribution(u, &d));
                }
                Ok(())
            })?;
            emit(&json!({
                "model_kind": model.kind().as_str(),
                "trials": trials,
                "rng_seed": rng_seed,
                "distributions": out,
            }));
            Ok(0)
        }
        Command::Convert { file, to, output } => {
            let model = read_model(&file)?;
            let converted = convert(&model, to.into())?;
            write_text(output.as_deref(), &serialize_model(&converted))?;
            Ok(0)
        }
        Command::Compare {
            left,
            right,
            seeds,
            mode,
            tol,
            trials,
            rng_seed,
            budget,
        } => compare(&left, &right, &seeds, mode, tol, trials, rng_seed, budget),
        Command::Stats {
            file,
            seed,
            seed2,
            targets,
            budget,
        } => stats(&file, &seed, seed2.as_deref(), &targets, budget),
        Command::Fixture { name, output } => {
            let model: Model = match name {
                FixtureName::ReverseTriggering => reverse_triggering_fixture().into(),
            };
            write_text(output.as_deref(), &serialize_model(&model))?;
            Ok(0)
        }
    }
}

fn validate(file: &Path) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| io_failure(file, e))?;
    match parse_model(&text) {
        Ok(model) => {
            let mut body = report::validation(&model.validate());
            body["model_kind"] = json!(model.kind().as_str());
            body["nodes"] = json!(model.node_count());
            emit(&body);
            Ok(0)
        }
        Err(Error::Invalid(r)) => {
            emit(&report::validation(&r));
            Ok(EXIT_FAILURE)
        }
        Err(e) => Err(e.into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn compare(
    left: &Path,
    right: &Path,
    seeds: &SeedArgs,
    mode: Mode,
    tol: f64,
    trials: u64,
    rng_seed: u64,
    budget: u128,
) -> Outcome {
    let (a, b) = (read_model(left)?, read_model(right)?);
    if a.universe().names() != b.universe().names() {
        return Err(Error::UniverseMismatch("the two files list different nodes".into()).into());
    }
    let chosen = explicit_seeds(&a, seeds)?;
    let exhaustive_request = chosen.is_none();
    let mode = match mode {
        Mode::Exact => CompareMode::Exact { budget },
        Mode::Mc => CompareMode::MonteCarlo {
            trials,
            rng_seed,
            tolerance: tol,
        },
    };
    let mut total = None;
    for_seed_batches(a.node_count(), chosen, |batch| {
        let r = equivalence_report(&a, &b, mode.clone(), Some(batch))?;
        match &mut total {
            None => total = Some(r),
            Some(t) => t.verdicts.extend(r.verdicts.into_iter().filter(|v| !v.pass)),
        }
        Ok(())
    })?;
    let mut report = total.expect("at least one seed batch");
    report.exhaustive = report.exhaustive || exhaustive_request;
    let checked = if exhaustive_request {
        (1u128 << a.node_count()) - 1
    } else {
        report.verdicts.len() as u128
    };
    let mut body = report::equivalence(a.universe(), &report);
    body["seeds_checked"] = json!(checked);
    emit(&body);
    Ok(if report.all_passed() { 0 } else { EXIT_FAILURE })
}

fn stats(file: &Path, seed: &str, seed2: Option<&str>, targets: &str, budget: u128) -> Outcome {
    let model = read_model(file)?;
    let u = model.universe();
    let targets: Vec<usize> = parse_set(&model, targets)?.iter().collect();
    if targets.len() < 2 && seed2.is_some() {
        return Err(usage(Error::InvalidArgument("the certificate check needs two targets".into())));
    }
    let mut seeds = vec![parse_set(&model, seed)?];
    if let Some(s) = seed2 {
        seeds.push(parse_set(&model, s)?);
    }
    let stats = exact_distributions(&model, &seeds, budget)?
        .iter()
        .map(|d| one_step_statistics(d, &targets))
        .collect::<Result<Vec<_>, _>>()?;
    let mut body = json!({
        "model_kind": model.kind().as_str(),
        "statistics": stats.iter().map(|s| report::one_step(u, s)).collect::<Vec<_>>(),
    });
    if let [s1, s2] = stats.as_slice() {
        let mut certificates = Vec::new();
        for (i, &v1) in targets.iter().enumerate() {
            for &v2 in &targets[i + 1..] {
                if let Some(c) = cgt_violation_certificate(s1, s2, v1, v2)? {
                    certificates.push(report::certificate(u, &c));
                }
            }
        }
        body["certificates"] = json!(certificates);
    }
    emit(&body);
    Ok(0)
}
