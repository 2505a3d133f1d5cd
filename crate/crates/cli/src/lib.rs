//! Command-line front end: argument parsing, dispatch and result emission.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use asymfree::bounds::{corollary_intersection_bound_f64, theorem_bounds, BoundSummary, BoundsError};
use asymfree::experiments::{
    conjugation_freeness_fraction, family_of, sample_trace_values, tail_fraction, ExperimentError, McEstimate,
    MicrostateSpec,
};
use asymfree::freeness::FreenessError;
use asymfree::haar::sample_unitary;
use asymfree::matrix::{DiagonalObservable, DiagonalPattern, ObservableDocument};
use asymfree::rng::SeededStream;
use asymfree::verify::{run_suite, Suite, VerifyOptions};
use asymfree::weingarten::{EntryFactor, EntryMomentSpec, Oracle, WeingartenError};
use asymfree::word::AlternatingExpression;

pub use asymfree::parse::{parse_expression, ParseError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "asymfree", version, about = "Exact moments, explicit bounds and Monte Carlo for Haar unitaries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for sampling; results do not depend on it.
    #[arg(long, global = true, env = "ASYMFREE_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Explicit mean, second-moment and tail bounds.
    Bound(BoundArgs),
    /// Exact expected trace of an expression, or an exact entry moment.
    Exact(ExactArgs),
    /// Monte Carlo estimate of the trace moments (one row per --k).
    Mc(SampleArgs),
    /// Monte Carlo tail frequency P(|tau| >= eps).
    Tail(SampleArgs),
    /// Fraction of samples inside a microstate set.
    Freeness(FreenessArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Write one Haar sample as a matrix document.
    Sample(HaarArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PatternArg {
    Alternating,
    Balanced,
    Roots,
}

impl From<PatternArg> for DiagonalPattern {
    fn from(p: PatternArg) -> Self {
        match p {
            PatternArg::Alternating => DiagonalPattern::Alternating,
            PatternArg::Balanced => DiagonalPattern::Balanced,
            PatternArg::Roots => DiagonalPattern::RootsOfUnity,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include wall-clock time in the JSON meta object.
    #[arg(long)]
    pub record_time: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    /// Total word length.
    #[arg(long)]
    pub m: usize,
    /// Norm bound on the observables.
    #[arg(long = "M", default_value_t = 1.0)]
    pub norm: f64,
    /// Number of observable slots.
    #[arg(long)]
    pub w: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Also report the lower bound on the intersection of this many tail events.
    #[arg(long)]
    pub card: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ObservableArgs {
    #[arg(long, value_enum, default_value = "alternating")]
    pub pattern: PatternArg,
    #[arg(long = "M", default_value_t = 1.0)]
    pub norm: f64,
    /// JSON observable document, or an array of them (one per slot).
    #[arg(long)]
    pub xfile: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    #[arg(long, required_unless_present = "plain")]
    pub expr: Option<String>,
    #[arg(long)]
    pub k: usize,
    /// Number of independent unitaries; defaults to the largest generator used.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub observables: ObservableArgs,
    /// Plain entry factors `i:j[:g]`, comma separated (entry-moment mode).
    #[arg(long, conflicts_with = "expr")]
    pub plain: Option<String>,
    /// Conjugated entry factors `s:t[:g]`, comma separated.
    #[arg(long, requires = "plain")]
    pub conj: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub expr: String,
    /// Dimension; repeat for a sweep.
    #[arg(long, required = true, num_args = 1..)]
    pub k: Vec<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tail threshold, also used for the bound columns.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[command(flatten)]
    pub observables: ObservableArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FreenessMode {
    /// Independent unitaries alongside fixed observables.
    Micro,
    /// Independently conjugated copies of the observables.
    Conj,
}

#[derive(Debug, Clone, Args)]
pub struct FreenessArgs {
    #[arg(long, value_enum, default_value = "micro")]
    pub mode: FreenessMode,
    #[arg(long)]
    pub k: usize,
    /// Number of unitaries (micro mode).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Number of observables.
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Largest monomial degree tested.
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, default_value_t = 0.2)]
    pub eps: f64,
    /// Operator-norm cap R on the microstates.
    #[arg(long, default_value_t = 1.0)]
    pub cap: f64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub observables: ObservableArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 3)]
    pub max_m: usize,
    #[arg(long, default_value_t = 6)]
    pub max_k: usize,
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    pub seed: u64,
    /// JSON report file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct HaarArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample index within the seed's stream.
    #[arg(long, default_value_t = 0)]
    pub index: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("runtime cap exceeded: {0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 1,
            Self::Verification(_) => 2,
            Self::Cap(_) => 3,
        }
    }
}

impl From<WeingartenError> for CliError {
    fn from(e: WeingartenError) -> Self {
        match e {
            WeingartenError::OrderCapExceeded { .. }
            | WeingartenError::UnsupportedCap(_)
            | WeingartenError::IndexMapCapExceeded { .. } => Self::Cap(e.to_string()),
            other => Self::Config(other.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::BellCapExceeded { .. } | BoundsError::InjectionCapExceeded { .. } => Self::Cap(e.to_string()),
            other => Self::Config(other.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Bounds(b) => b.into(),
            ExperimentError::MonomialTooLong { .. } | ExperimentError::Freeness(FreenessError::DegreeCapExceeded { .. }) => {
                Self::Cap(e.to_string())
            }
            other => Self::Config(other.to_string()),
        }
    }
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

/// One output row. Empty fields serialize as blank CSV cells and JSON nulls.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    pub command: String,
    pub expr: Option<String>,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub w: Option<usize>,
    pub norm: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub mean: Option<Complex64>,
    pub second_abs: Option<f64>,
    pub stderr_mean: Option<f64>,
    pub stderr_second: Option<f64>,
    pub eps: Option<f64>,
    pub tail_frac: Option<f64>,
    pub bounds: Option<BoundSummary>,
    /// Command-specific columns appended after the common schema.
    pub extra: Vec<(String, Value)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    Null,
}

/// 17 significant digits, so every double round-trips.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

impl Value {
    fn json(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Float(f) => format_float(*f),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => serde_json::to_string(s).expect("strings serialize"),
            Value::Null => "null".to_string(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Value::Null => String::new(),
            Value::Float(f) if !f.is_finite() => String::new(),
            Value::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Value::Text(s) => s.clone(),
            other => other.json(),
        }
    }
}

pub const COLUMNS: [&str; 21] = [
    "run_id", "command", "expr", "k", "n", "m", "w", "M", "samples", "seed", "mean_re", "mean_im", "second_abs",
    "stderr_mean", "stderr_second", "eps", "tail_frac", "mean_bound", "second_bound", "tail_bound", "tail_valid",
];

impl Record {
    fn new(command: &str) -> Self {
        Self { command: command.to_string(), ..Self::default() }
    }

    fn with_estimate(mut self, est: &McEstimate) -> Self {
        self.mean = Some(est.mean);
        self.second_abs = Some(est.second_abs_moment);
        self.stderr_mean = Some(est.std_error_mean);
        self.stderr_second = Some(est.std_error_second);
        self.samples = Some(est.samples);
        self.seed = Some(est.master_seed);
        self
    }

    fn fields(&self, run_id: &str) -> Vec<(String, Value)> {
        let int = |v: Option<usize>| v.map_or(Value::Null, |x| Value::Int(x as u64));
        let float = |v: Option<f64>| v.map_or(Value::Null, Value::Float);
        let b = self.bounds.as_ref();
        let values = vec![
            Value::Text(run_id.to_string()),
            Value::Text(self.command.clone()),
            self.expr.clone().map_or(Value::Null, Value::Text),
            int(self.k),
            int(self.n),
            int(self.m),
            int(self.w),
            float(self.norm),
            int(self.samples),
            self.seed.map_or(Value::Null, Value::Int),
            float(self.mean.map(|z| z.re)),
            float(self.mean.map(|z| z.im)),
            float(self.second_abs),
            float(self.stderr_mean),
            float(self.stderr_second),
            float(self.eps),
            float(self.tail_frac),
            float(b.map(|b| b.mean_bound)),
            float(b.map(|b| b.second_bound)),
            float(b.map(|b| b.tail_bound)),
            b.map_or(Value::Null, |b| Value::Bool(b.tail_valid)),
        ];
        let mut out: Vec<(String, Value)> = COLUMNS.iter().map(|c| c.to_string()).zip(values).collect();
        out.extend(self.extra.iter().cloned());
        out
    }
}

/// Deterministic identifier of a configuration (FNV-1a over its text).
pub fn run_id(config_text: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in config_text.bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

pub fn render(records: &[Record], format: Format, run_id: &str, wall_time: Option<f64>) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            let mut header: Vec<String> = COLUMNS.iter().map(|c| c.to_string()).collect();
            if let Some(first) = records.first() {
                header.extend(first.extra.iter().map(|(name, _)| name.clone()));
            }
            out.push_str(&header.join(","));
            out.push('\n');
            for r in records {
                let cells: Vec<String> = r.fields(run_id).iter().map(|(_, v)| v.csv()).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        Format::Json => {
            out.push_str("{\n  \"meta\": {\"version\": ");
            out.push_str(&Value::Text(VERSION.to_string()).json());
            if let Some(t) = wall_time {
                write!(out, ", \"wall_time_s\": {}", format_float(t)).expect("string write");
            }
            out.push_str("},\n  \"records\": [");
            for (i, r) in records.iter().enumerate() {
                out.push_str(if i == 0 { "\n    {" } else { ",\n    {" });
                let body: Vec<String> =
                    r.fields(run_id).iter().map(|(name, v)| format!("{}: {}", Value::Text(name.clone()).json(), v.json())).collect();
                out.push_str(&body.join(", "));
                out.push('}');
            }
            out.push_str(if records.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        }
    }
    out
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_observables(path: &PathBuf) -> Result<Vec<DiagonalObservable>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
    let docs: Vec<ObservableDocument> = match serde_json::from_str::<Vec<ObservableDocument>>(&text) {
        Ok(v) => v,
        Err(_) => vec![serde_json::from_str(&text).map_err(|e| config(format!("{}: {e}", path.display())))?],
    };
    docs.iter().map(|d| DiagonalObservable::from_document(d).map_err(config)).collect()
}

/// One observable per slot: from `--xfile` (a single document is reused for
/// every slot) or built from `--pattern` and `--M`.
fn observables(args: &ObservableArgs, k: usize, slots: usize) -> Result<Vec<DiagonalObservable>, CliError> {
    match &args.xfile {
        Some(path) => {
            let xs = load_observables(path)?;
            if let Some(bad) = xs.iter().find(|x| x.dim() != k) {
                return Err(config(format!("observable file has dimension {}, expected {k}", bad.dim())));
            }
            match xs.len() {
                1 => Ok(vec![xs[0].clone(); slots]),
                n if n >= slots => Ok(xs),
                n => Err(config(format!("observable file has {n} observables, {slots} needed"))),
            }
        }
        None => {
            let x = DiagonalObservable::new(k, args.pattern.into(), args.norm).map_err(config)?;
            Ok(vec![x; slots])
        }
    }
}

fn norm_of(xs: &[DiagonalObservable]) -> f64 {
    xs.iter().map(DiagonalObservable::norm_bound).fold(0.0, f64::max)
}

fn slots_needed(expr: &AlternatingExpression) -> usize {
    expr.max_slot()
}

fn parse_factors(text: &str) -> Result<Vec<EntryFactor>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let parts: Vec<usize> = item
                .trim()
                .split(':')
                .map(|p| p.parse::<usize>().map_err(|_| config(format!("bad entry factor {item:?}"))))
                .collect::<Result<_, _>>()?;
            match parts[..] {
                [i, j] => Ok(EntryFactor::new(i, j, 1)),
                [i, j, g] => Ok(EntryFactor::new(i, j, g)),
                _ => Err(config(format!("entry factor {item:?} must be i:j or i:j:g"))),
            }
        })
        .collect()
}

fn run_bound(a: &BoundArgs) -> Result<Vec<Record>, CliError> {
    let report = theorem_bounds(a.m, a.norm, a.w, a.k, a.eps)?;
    let mut r = Record::new("bound");
    r.k = Some(a.k);
    r.m = Some(a.m);
    r.w = Some(a.w);
    r.norm = Some(a.norm);
    r.eps = Some(a.eps);
    r.bounds = Some(report.summary());
    if let Some(card) = a.card {
        let v = corollary_intersection_bound_f64(card, a.m, a.norm, a.w, a.k, a.eps)?;
        r.extra.push(("intersection_bound".into(), Value::Float(v)));
    }
    Ok(vec![r])
}

fn run_exact(a: &ExactArgs) -> Result<Vec<Record>, CliError> {
    let mut r = Record::new("exact");
    r.k = Some(a.k);
    if let Some(plain) = &a.plain {
        let spec = EntryMomentSpec::new(a.k, parse_factors(plain)?, parse_factors(a.conj.as_deref().unwrap_or(""))?)?;
        let value = Oracle::default().entry_moment(&spec)?;
        let f = asymfree::bounds::rational_to_f64(&value);
        r.mean = Some(Complex64::new(f, 0.0));
        r.extra.push(("exact".into(), Value::Text(value.to_string())));
        return Ok(vec![r]);
    }
    let expr = parse_expression(a.expr.as_deref().unwrap_or_default()).map_err(config)?;
    let n = a.n.unwrap_or(expr.max_generator());
    let xs = observables(&a.observables, a.k, slots_needed(&expr))?;
    let value = asymfree::weingarten::exact_word_moment(&expr, &xs, a.k, n)?;
    r.expr = Some(expr.to_string());
    r.n = Some(n);
    r.m = Some(expr.m());
    r.w = Some(expr.w());
    r.norm = Some(norm_of(&xs));
    r.mean = Some(value.to_complex());
    r.extra.push(("exact".into(), Value::Text(value.to_string())));
    Ok(vec![r])
}

fn run_sampling(a: &SampleArgs, command: &str) -> Result<Vec<Record>, CliError> {
    let expr = parse_expression(&a.expr).map_err(config)?;
    let n = a.n.unwrap_or(expr.max_generator());
    a.k.iter()
        .map(|&k| {
            let xs = observables(&a.observables, k, slots_needed(&expr))?;
            let values = sample_trace_values(&expr, &xs, k, n, a.samples, a.seed)?;
            let est = McEstimate::from_values(&values, a.seed)?;
            let norm = norm_of(&xs);
            let mut r = Record::new(command).with_estimate(&est);
            r.expr = Some(expr.to_string());
            r.k = Some(k);
            r.n = Some(n);
            r.m = Some(expr.m());
            r.w = Some(expr.w());
            r.norm = Some(norm);
            r.eps = Some(a.eps);
            r.tail_frac = Some(tail_fraction(&values, a.eps, a.seed).fraction);
            r.bounds = Some(theorem_bounds(expr.m(), norm, expr.w(), k, a.eps)?.summary());
            Ok(r)
        })
        .collect()
}

fn run_freeness(a: &FreenessArgs) -> Result<Vec<Record>, CliError> {
    let xs = observables(&a.observables, a.k, a.s)?;
    let xs = xs[..a.s].to_vec();
    let family = family_of(&xs);
    let est = match a.mode {
        FreenessMode::Micro => {
            let spec = MicrostateSpec::free_unitary_targets(a.cap, a.degree, a.eps, a.s, a.n, &family)?;
            asymfree::experiments::microstate_fraction(a.k, a.n, &spec, &xs, a.samples, a.seed)?
        }
        FreenessMode::Conj => {
            let spec = MicrostateSpec::conjugated_targets(a.cap, a.degree, a.eps, a.s, &family)?;
            conjugation_freeness_fraction(a.k, &spec, &xs, a.samples, a.seed)?
        }
    };
    let mut r = Record::new("freeness");
    r.k = Some(a.k);
    r.n = Some(if a.mode == FreenessMode::Micro { a.n } else { a.s });
    r.norm = Some(norm_of(&xs));
    r.samples = Some(est.samples);
    r.seed = Some(a.seed);
    r.eps = Some(a.eps);
    r.extra = vec![
        ("mode".into(), Value::Text(format!("{:?}", a.mode).to_lowercase())),
        ("s".into(), Value::Int(a.s as u64)),
        ("degree".into(), Value::Int(a.degree as u64)),
        ("fraction".into(), Value::Float(est.fraction)),
        ("fraction_stderr".into(), Value::Float(est.std_error)),
    ];
    Ok(vec![r])
}

fn run_verify(a: &VerifyArgs) -> Result<(), CliError> {
    let suite: Suite = a.suite.parse().map_err(config)?;
    if a.max_m == 0 || a.max_k == 0 {
        return Err(config("--max-m and --max-k must be positive"));
    }
    let opts = VerifyOptions { max_m: a.max_m, max_k: a.max_k, seed: a.seed };
    let checks = run_suite(suite, &opts);
    for c in &checks {
        println!("{c}");
    }
    if let Some(path) = &a.out {
        let items: Vec<serde_json::Value> = checks
            .iter()
            .map(|c| serde_json::json!({"name": c.name, "passed": c.passed, "cases": c.cases, "detail": c.detail}))
            .collect();
        let doc = serde_json::json!({"meta": {"version": VERSION}, "suite": suite.to_string(), "checks": items});
        emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")), Some(path))?;
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join("; ")))
    }
}

fn run_sample(a: &HaarArgs) -> Result<(), CliError> {
    if a.k == 0 {
        return Err(config("--k must be positive"));
    }
    let u = sample_unitary(a.k, &SeededStream::new(a.seed, 0).substream(a.index));
    let doc = u.as_matrix().to_document();
    emit(&format!("{}\n", serde_json::to_string(&doc).expect("json")), a.out.as_ref())
}

fn finish(records: Vec<Record>, output: &OutputArgs, config_text: String, started: Instant) -> Result<(), CliError> {
    let wall = output.record_time.then(|| started.elapsed().as_secs_f64());
    let text = render(&records, output.format, &run_id(&config_text), wall);
    emit(&text, output.out.as_ref())
}

/// Canonical text of the options that determine the output.
fn config_text<T: std::fmt::Debug>(command: &str, args: &T) -> String {
    let text = format!("{command} {args:?}");
    // Output location and timing do not change the results.
    text.split(", output: ").next().unwrap_or(&text).to_string()
}

fn dispatch(command: &Command) -> Result<(), CliError> {
    let started = Instant::now();
    match command {
        Command::Bound(a) => finish(run_bound(a)?, &a.output, config_text("bound", a), started),
        Command::Exact(a) => finish(run_exact(a)?, &a.output, config_text("exact", a), started),
        Command::Mc(a) => finish(run_sampling(a, "mc")?, &a.output, config_text("mc", a), started),
        Command::Tail(a) => finish(run_sampling(a, "tail")?, &a.output, config_text("tail", a), started),
        Command::Freeness(a) => finish(run_freeness(a)?, &a.output, config_text("freeness", a), started),
        Command::Verify(a) => run_verify(a),
        Command::Sample(a) => run_sample(a),
    }
}

/// Runs a parsed command line inside a pool of the requested size.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let threads = match cli.threads {
        Some(0) => return Err(config("thread count must be positive")),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(config)?;
    pool.install(|| dispatch(&cli.command))
}
