//! Batch front-end for the nonextensive measures: compute entropies and
//! divergences over histogram files, sweep q, run the verification suite,
//! and run the minimizer experiment.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use nonext::divergence::{jrd, jsd, jtd, jtqd, kld, renyi_divergence, tsallis_relative_entropy};
use nonext::entropy::{renyi_entropy, shannon_entropy, tsallis_entropy};
use nonext::measures::{union_labels, Histogram, ProbabilityVector};
use nonext::qmath::QParameter;
use nonext::verify::{minimize_jtqd_first_arg, run_suite, suite_check_names, SamplingPlan};
use nonext::Error as LibError;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;
const EXIT_OPTIMIZER: u8 = 4;

#[derive(Parser)]
#[command(
    name = "nonext",
    version,
    about = "Nonextensive entropies and Jensen-Tsallis q-differences over histogram files"
)]
struct Cli {
    /// Seed for any sampled computation (the verification suite).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Output format: CSV with a header row, or JSON lines.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Align histogram labels lexicographically instead of first-seen order.
    #[arg(long, global = true)]
    sort_labels: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Shannon, Tsallis, and Renyi entropies of each input histogram.
    Entropy(EntropyArgs),
    /// Pairwise divergence matrices over the aligned inputs.
    Divergence(DivergenceArgs),
    /// Sweep measures over a q grid (plot-ready CSV).
    Sweep(SweepArgs),
    /// Run the numerical verification suite.
    Verify(VerifyArgs),
    /// Minimize T_q(p1, p2) over p1 for the given histogram p2.
    Minimize(MinimizeArgs),
}

#[derive(Args)]
struct QArgs {
    /// Single entropic index q >= 0.
    #[arg(long, conflicts_with = "q_grid")]
    q: Option<f64>,

    /// Inclusive grid `start:end:step`, e.g. `0:2:0.5`.
    #[arg(long, value_name = "A:B:STEP")]
    q_grid: Option<String>,
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    q: QArgs,

    /// Histogram files (`label,count` lines).
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Args)]
struct DivergenceArgs {
    #[command(flatten)]
    q: QArgs,

    /// Comma-separated measures: kld, d_q, renyi_div, jsd, jrd, jtd, jtqd.
    #[arg(long, value_delimiter = ',')]
    measure: Vec<String>,

    /// Mixture weights for the Jensen-type measures (two values for
    /// pairwise matrices). Default: uniform.
    #[arg(long, value_delimiter = ',')]
    weights: Vec<f64>,

    #[arg(required = true, num_args = 2..)]
    inputs: Vec<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    q: QArgs,

    /// Measures evaluated per grid point (default: jtqd).
    #[arg(long, value_delimiter = ',')]
    measure: Vec<String>,

    /// Mixture weights over all inputs. Default: uniform.
    #[arg(long, value_delimiter = ',')]
    weights: Vec<f64>,

    #[arg(required = true, num_args = 2..)]
    inputs: Vec<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only checks whose name starts with this prefix.
    #[arg(long, value_name = "CHECK")]
    only: Option<String>,

    /// Sampled trials per check.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
}

#[derive(Args)]
struct MinimizeArgs {
    /// Entropic index q for the objective T_q(., p2).
    #[arg(long)]
    q: f64,

    /// Iteration budget for the projected descent.
    #[arg(long, default_value_t = 500)]
    iterations: usize,

    /// Convergence tolerance on the projected step.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,

    /// Histogram file for p2.
    input: PathBuf,
}

/// CLI failure carrying its exit code.
enum Failure {
    Usage(String),
    Input(String),
    Verification,
    Optimizer(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Verification => EXIT_VERIFICATION,
            Failure::Optimizer(_) => EXIT_OPTIMIZER,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) | Failure::Input(msg) | Failure::Optimizer(msg) => {
                    eprintln!("error: {msg}");
                }
                Failure::Verification => eprintln!("error: verification failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Entropy(args) => cmd_entropy(args, format),
        Command::Divergence(args) => cmd_divergence(args, cli.sort_labels, format),
        Command::Sweep(args) => cmd_sweep(args, cli.sort_labels, format),
        Command::Verify(args) => cmd_verify(args, cli.seed, format),
        Command::Minimize(args) => cmd_minimize(args, format),
    }
}

// ---------------------------------------------------------------------
// shared plumbing

/// 12 significant digits, `inf` literal for infinite values.
fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x:.11e}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn print(&self, format: Format) {
        match format {
            Format::Csv => {
                println!("{}", self.header.join(","));
                for row in &self.rows {
                    let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                    println!("{}", fields.join(","));
                }
            }
            Format::Structured => {
                for row in &self.rows {
                    let obj: serde_json::Map<String, serde_json::Value> = self
                        .header
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                        .collect();
                    println!("{}", serde_json::Value::Object(obj));
                }
            }
        }
    }
}

fn parse_q(value: f64) -> Result<QParameter, Failure> {
    QParameter::new(value).map_err(|e| Failure::Usage(e.to_string()))
}

/// Resolve `--q`/`--q-grid` into a grid; `{0, 0.5, 1, 1.5, 2}` when omitted.
fn resolve_grid(args: &QArgs) -> Result<Vec<f64>, Failure> {
    if let Some(q) = args.q {
        parse_q(q)?;
        return Ok(vec![q]);
    }
    if let Some(spec) = &args.q_grid {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Failure::Usage(format!(
                "--q-grid expects A:B:STEP, got `{spec}`"
            )));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Failure::Usage(format!("invalid number `{p}` in --q-grid")))
            })
            .collect::<Result<_, _>>()?;
        let (start, end, step) = (nums[0], nums[1], nums[2]);
        if step <= 0.0 || step.is_nan() || start < 0.0 || end < start {
            return Err(Failure::Usage(format!(
                "--q-grid `{spec}` yields an empty or invalid grid"
            )));
        }
        let mut grid = Vec::new();
        let mut k = 0u32;
        loop {
            let q = start + f64::from(k) * step;
            if q > end + 1e-12 {
                break;
            }
            grid.push(q);
            k += 1;
        }
        if grid.is_empty() {
            return Err(Failure::Usage(format!("--q-grid `{spec}` is empty")));
        }
        for &q in &grid {
            parse_q(q)?;
        }
        return Ok(grid);
    }
    Ok(vec![0.0, 0.5, 1.0, 1.5, 2.0])
}

fn read_histogram(path: &Path) -> Result<Histogram, Failure> {
    let file = File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Histogram::parse(BufReader::new(file)).map_err(|e| match e {
        LibError::Parse { line, message } => {
            Failure::Input(format!("{}:{line}: {message}", path.display()))
        }
        other => Failure::Input(format!("{}: {other}", path.display())),
    })
}

/// Read all inputs, align them over the union label set, and normalize.
fn load_aligned(
    inputs: &[PathBuf],
    sort: bool,
) -> Result<(Vec<String>, Vec<ProbabilityVector>), Failure> {
    let histograms: Vec<Histogram> = inputs
        .iter()
        .map(|p| read_histogram(p))
        .collect::<Result<_, _>>()?;
    let labels = union_labels(&histograms, sort);
    if labels.is_empty() {
        return Err(Failure::Input("inputs contain no labeled counts".into()));
    }
    let mut dists = Vec::with_capacity(histograms.len());
    for (h, path) in histograms.iter().zip(inputs) {
        let p = h
            .aligned_to(&labels)
            .normalized()
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        dists.push(p);
    }
    Ok((labels, dists))
}

fn parse_weights(raw: &[f64], expected: usize, what: &str) -> Result<ProbabilityVector, Failure> {
    if raw.is_empty() {
        return Ok(ProbabilityVector::uniform(expected));
    }
    if raw.len() != expected {
        return Err(Failure::Usage(format!(
            "--weights needs {expected} values for {what}, got {}",
            raw.len()
        )));
    }
    ProbabilityVector::new(raw.to_vec()).map_err(|e| Failure::Usage(format!("--weights: {e}")))
}

// ---------------------------------------------------------------------
// commands

fn cmd_entropy(args: EntropyArgs, format: Format) -> Result<(), Failure> {
    let grid = resolve_grid(&args.q)?;
    let mut table = Table::new(vec!["file", "measure", "q", "value"]);
    for path in &args.inputs {
        let hist = read_histogram(path)?;
        let p = hist
            .measure()
            .normalized()
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let name = path.display().to_string();
        table.push(vec![
            name.clone(),
            "shannon".into(),
            "1".into(),
            fmt_num(shannon_entropy(&p)),
        ]);
        for &qv in &grid {
            let q = parse_q(qv)?;
            table.push(vec![
                name.clone(),
                "tsallis".into(),
                qv.to_string(),
                fmt_num(tsallis_entropy(&p, q)),
            ]);
        }
        for &qv in &grid {
            let q = parse_q(qv)?;
            table.push(vec![
                name.clone(),
                "renyi".into(),
                qv.to_string(),
                fmt_num(renyi_entropy(&p, q)),
            ]);
        }
    }
    table.print(format);
    Ok(())
}

const ALL_DIVERGENCE_MEASURES: &[&str] = &["kld", "d_q", "renyi_div", "jsd", "jrd", "jtd", "jtqd"];

fn validate_measures(requested: &[String], allowed: &[&str]) -> Result<Vec<String>, Failure> {
    for m in requested {
        if !allowed.contains(&m.as_str()) {
            return Err(Failure::Usage(format!(
                "unknown measure `{m}` (expected one of: {})",
                allowed.join(", ")
            )));
        }
    }
    Ok(requested.to_vec())
}

fn pair_value(
    measure: &str,
    a: &ProbabilityVector,
    b: &ProbabilityVector,
    weights: &ProbabilityVector,
    q: QParameter,
) -> f64 {
    let args = [a.clone(), b.clone()];
    match measure {
        "kld" => kld(a, b),
        "d_q" => tsallis_relative_entropy(a, b, q),
        "renyi_div" => renyi_divergence(a, b, q),
        "jsd" => jsd(weights, &args),
        "jrd" => jrd(weights, &args, q),
        "jtd" => jtd(weights, &args, q),
        "jtqd" => jtqd(weights, &args, q),
        _ => unreachable!("validated measure name"),
    }
    .expect("aligned inputs share support size")
}

/// Measures whose value does not depend on q are emitted once, at q = 1.
fn is_q_free(measure: &str) -> bool {
    matches!(measure, "kld" | "jsd")
}

fn cmd_divergence(args: DivergenceArgs, sort: bool, format: Format) -> Result<(), Failure> {
    let grid = resolve_grid(&args.q)?;
    let measures = if args.measure.is_empty() {
        ALL_DIVERGENCE_MEASURES
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        validate_measures(&args.measure, ALL_DIVERGENCE_MEASURES)?
    };
    let weights = parse_weights(&args.weights, 2, "pairwise measures")?;
    let (_, dists) = load_aligned(&args.inputs, sort)?;
    let names: Vec<String> = args
        .inputs
        .iter()
        .map(|p| p.display().to_string())
        .collect();

    let mut table = Table::new(vec!["measure", "q", "file_a", "file_b", "value"]);
    for measure in &measures {
        let qs: Vec<f64> = if is_q_free(measure) {
            vec![1.0]
        } else {
            grid.clone()
        };
        for &qv in &qs {
            let q = parse_q(qv)?;
            for (i, a) in dists.iter().enumerate() {
                for (j, b) in dists.iter().enumerate() {
                    let value = pair_value(measure, a, b, &weights, q);
                    table.push(vec![
                        measure.clone(),
                        qv.to_string(),
                        names[i].clone(),
                        names[j].clone(),
                        fmt_num(value),
                    ]);
                }
            }
        }
    }
    table.print(format);
    Ok(())
}

fn cmd_sweep(args: SweepArgs, sort: bool, format: Format) -> Result<(), Failure> {
    let grid = resolve_grid(&args.q)?;
    let measures = if args.measure.is_empty() {
        vec!["jtqd".to_string()]
    } else {
        validate_measures(&args.measure, ALL_DIVERGENCE_MEASURES)?
    };
    let (_, dists) = load_aligned(&args.inputs, sort)?;
    let m = dists.len();
    let pairwise_only = ["kld", "d_q", "renyi_div"];
    for measure in &measures {
        if pairwise_only.contains(&measure.as_str()) && m != 2 {
            return Err(Failure::Usage(format!(
                "measure `{measure}` needs exactly two inputs, got {m}"
            )));
        }
    }
    let weights = parse_weights(&args.weights, m, "the input mixture")?;

    let mut header: Vec<&'static str> = vec!["q"];
    for measure in &measures {
        header.push(
            ALL_DIVERGENCE_MEASURES
                .iter()
                .find(|&&n| n == measure)
                .expect("validated measure name"),
        );
    }
    let mut table = Table::new(header);
    for &qv in &grid {
        let q = parse_q(qv)?;
        let mut row = vec![qv.to_string()];
        for measure in &measures {
            let value = match measure.as_str() {
                "kld" => kld(&dists[0], &dists[1]),
                "d_q" => tsallis_relative_entropy(&dists[0], &dists[1], q),
                "renyi_div" => renyi_divergence(&dists[0], &dists[1], q),
                "jsd" => jsd(&weights, &dists),
                "jrd" => jrd(&weights, &dists, q),
                "jtd" => jtd(&weights, &dists, q),
                "jtqd" => jtqd(&weights, &dists, q),
                _ => unreachable!(),
            }
            .expect("aligned inputs share support size");
            row.push(fmt_num(value));
        }
        table.push(row);
    }
    table.print(format);
    Ok(())
}

fn cmd_verify(args: VerifyArgs, seed: u64, format: Format) -> Result<(), Failure> {
    if let Some(prefix) = &args.only {
        if !suite_check_names()
            .iter()
            .any(|n| n.starts_with(prefix.as_str()))
        {
            return Err(Failure::Usage(format!(
                "unknown check `{prefix}` (expected a prefix of: {})",
                suite_check_names().join(", ")
            )));
        }
    }
    let plan = SamplingPlan::with_seed(seed).with_trials(args.trials.max(1));
    let reports = run_suite(&plan, args.only.as_deref());

    match format {
        Format::Csv => {
            println!("name,verdict,worst_violation,samples,seed");
            for r in &reports {
                println!(
                    "{},{},{},{},{}",
                    csv_field(&r.name),
                    r.verdict,
                    fmt_num(r.worst_violation),
                    r.samples,
                    seed
                );
            }
        }
        Format::Structured => {
            for r in &reports {
                let obj = serde_json::json!({
                    "name": r.name,
                    "verdict": r.verdict.to_string(),
                    "worst_violation": fmt_num(r.worst_violation),
                    "samples": r.samples,
                    "seed": seed,
                    "tolerance": fmt_num(r.tolerance),
                    "witness": r.witness,
                });
                println!("{obj}");
            }
        }
    }

    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_minimize(args: MinimizeArgs, format: Format) -> Result<(), Failure> {
    let q = parse_q(args.q)?;
    let hist = read_histogram(&args.input)?;
    let p2 = hist
        .measure()
        .normalized()
        .map_err(|e| Failure::Input(format!("{}: {e}", args.input.display())))?;
    let outcome = minimize_jtqd_first_arg(&p2, q, args.iterations, args.tolerance)
        .map_err(|e| Failure::Optimizer(e.to_string()))?;

    let labels = hist.labels().join(" ");
    let minimizer = outcome
        .minimizer
        .iter()
        .map(|&x| fmt_num(x))
        .collect::<Vec<_>>();
    match format {
        Format::Csv => {
            println!("objective,iterations,converged,labels,minimizer");
            println!(
                "{},{},{},{},{}",
                fmt_num(outcome.objective),
                outcome.iterations,
                outcome.converged,
                csv_field(&labels),
                csv_field(&minimizer.join(" "))
            );
        }
        Format::Structured => {
            let obj = serde_json::json!({
                "objective": fmt_num(outcome.objective),
                "iterations": outcome.iterations,
                "converged": outcome.converged,
                "labels": hist.labels(),
                "minimizer": minimizer,
            });
            println!("{obj}");
        }
    }
    Ok(())
}
