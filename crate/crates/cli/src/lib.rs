//! Command-line front end for the stratlab experiments.
//!
//! Exit codes: 0 success, 1 invalid arguments or configuration, 2 runtime
//! failure, 3 an `--assert`ed check failed.
//!
//! Experiment subcommands start from `--config` (or built-in defaults) and
//! apply flags on top, field by field, before validating. The effective
//! configuration is echoed under `"config"` in every JSON mirror.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use stratlab::experiment::checks::{
    all_passed, height_floor_checks, level_bound_checks, precision_checks, valency_checks, CheckOutcome,
};
use stratlab::experiment::tables::{json_mirror, write_csv, TableRow};
use stratlab::experiment::{trial_stream, OutputSpec};
use stratlab::{
    convergence_table, estimate_prob, height_survey, sample_double_digraph, sample_gnp, sample_power_law_graph,
    stratify, valency_survey, verify_level_bounds, DoubleDigraph, ExperimentConfig, Graph, ModelSpec, OutputFormat,
    Relation, Stratification,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_ASSERT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "stratlab", version, about = "Random double digraphs, stratifications and Monte Carlo surveys")]
struct Cli {
    /// Worker threads for trial-level parallelism (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw one structure and print it.
    Sample(SampleArgs),
    /// Stratify a structure read from a file.
    Stratify(StratifyArgs),
    /// Estimate the probability of a sentence over the n grid.
    Estimate(ExperimentArgs),
    /// Record level sizes against C * n^(2 alpha2).
    VerifyBounds(ExperimentArgs),
    /// Mean R2 out-degree and concentration band.
    SurveyValency(ExperimentArgs),
    /// Heights against log2 log2 n.
    SurveyHeights(ExperimentArgs),
    /// Probability estimates over a grid of at least three sizes.
    Convergence(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Gnp,
    PowerLaw,
    DoubleAlpha,
}

impl ModelKind {
    fn tag(self) -> &'static str {
        match self {
            ModelKind::Gnp => "gnp",
            ModelKind::PowerLaw => "power-law",
            ModelKind::DoubleAlpha => "double-alpha",
        }
    }
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: Option<ModelKind>,
    /// Edge probability of the gnp model.
    #[arg(long)]
    p: Option<f64>,
    /// Exponent of the power-law model, p = n^-alpha.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    alpha1: Option<f64>,
    #[arg(long)]
    alpha2: Option<f64>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct StratifyArgs {
    /// JSON double digraph, or JSON graph read through its adjacency.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    root: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// JSON experiment config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    /// Comma-separated node counts, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// true, r2-nonempty, height-parity-even, height-at-least:<k>, all-level-bounds:C=<c>
    #[arg(long)]
    sentence: Option<String>,
    #[arg(long)]
    slack: Option<f64>,
    /// all or sample:<r>
    #[arg(long)]
    roots: Option<String>,
    /// Reveal edges on demand instead of sampling whole structures.
    #[arg(long)]
    lazy: bool,
    #[command(flatten)]
    output: OutputArgs,
    /// Run the acceptance checks for this survey and exit 3 if any fails.
    #[arg(long)]
    assert: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
    Assert,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Runtime(_) => EXIT_RUNTIME,
            Failure::Assert => EXIT_ASSERT,
        }
    }
}

impl From<stratlab::Error> for Failure {
    fn from(e: stratlab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return EXIT_OK;
            }
            if !e.render().to_string().contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return EXIT_USAGE;
        }
    };
    let result = match cli.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(Failure::Runtime(format!("thread pool: {e}"))),
        },
        None => dispatch(cli.command),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Runtime(msg) => eprintln!("runtime error: {msg}"),
                Failure::Assert => eprintln!("one or more checks failed"),
            }
            failure.code()
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Sample(args) => sample(args),
        Command::Stratify(args) => stratify_file(args),
        Command::Estimate(args) => {
            let cfg = resolve(&args)?;
            let rows = estimate_prob(&cfg)?;
            let checks = args.assert.then(|| precision_checks(&rows));
            emit_table(&cfg, &rows, None::<()>)?;
            finish(checks)
        }
        Command::Convergence(args) => {
            let cfg = resolve(&args)?;
            let rows = convergence_table(&cfg)?;
            let checks = args.assert.then(|| precision_checks(&rows));
            emit_table(&cfg, &rows, None::<()>)?;
            finish(checks)
        }
        Command::VerifyBounds(args) => {
            let cfg = resolve(&args)?;
            let report = verify_level_bounds(&cfg)?;
            let checks = args.assert.then(|| level_bound_checks(&report));
            emit_table(&cfg, report.rows().collect::<Vec<_>>(), Some(&report.summaries))?;
            finish(checks)
        }
        Command::SurveyValency(args) => {
            let cfg = resolve(&args)?;
            let report = valency_survey(&cfg)?;
            let checks = match (args.assert, cfg.model.alpha_pair()) {
                (true, Some(alpha)) => Some(valency_checks(&report, alpha)),
                _ => None,
            };
            emit_table(&cfg, &report.rows, None::<()>)?;
            finish(checks)
        }
        Command::SurveyHeights(args) => {
            let cfg = resolve(&args)?;
            let survey = height_survey(&cfg)?;
            let checks = args.assert.then(|| height_floor_checks(&survey));
            emit_table(&cfg, &survey.rows, Some(&survey.summaries))?;
            finish(checks)
        }
    }
}

fn finish(checks: Option<Vec<CheckOutcome>>) -> Outcome {
    let Some(checks) = checks else { return Ok(()) };
    for c in &checks {
        eprintln!("{c}");
    }
    if all_passed(&checks) {
        Ok(())
    } else {
        Err(Failure::Assert)
    }
}

fn default_config() -> Value {
    json!({
        "model": {"kind": "double-alpha", "alpha1": 0.1, "alpha2": 0.2},
        "n_grid": [64, 256, 1024],
        "trials": 100,
        "master_seed": 0
    })
}

/// Config file (or defaults) with the flags applied, then validated.
fn resolve(args: &ExperimentArgs) -> Result<ExperimentConfig, Failure> {
    let mut value = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => default_config(),
    };
    let obj = value
        .as_object_mut()
        .ok_or_else(|| Failure::Usage("config: expected a JSON object".into()))?;
    apply_model(obj, &args.model)?;
    let mut set = |key: &str, v: Option<Value>| {
        if let Some(v) = v {
            obj.insert(key.into(), v);
        }
    };
    set("n_grid", args.n_grid.as_ref().map(|g| json!(g)));
    set("trials", args.trials.map(|t| json!(t)));
    set("master_seed", args.seed.map(|s| json!(s)));
    set("sentence", args.sentence.as_ref().map(|s| json!(s)));
    set("slack_c", args.slack.map(|c| json!(c)));
    set("root_policy", args.roots.as_ref().map(|r| json!(r)));
    set("lazy", args.lazy.then_some(json!(true)));
    let mut cfg = ExperimentConfig::from_value(&value).map_err(Failure::from)?;

    let current = cfg.output.clone();
    let path = args.output.out.clone().or_else(|| current.as_ref().and_then(|o| o.path.clone()));
    let format = args.output.format.or(current.map(|o| o.format)).unwrap_or(OutputFormat::Csv);
    cfg.output = Some(OutputSpec { path, format });
    Ok(cfg)
}

/// Overrides the model object: `--model` replaces it, parameter flags alone
/// patch the existing one.
fn apply_model(obj: &mut Map<String, Value>, args: &ModelArgs) -> Outcome {
    let params = [("p", args.p), ("alpha", args.alpha), ("alpha1", args.alpha1), ("alpha2", args.alpha2)];
    let mut model = match args.model {
        Some(kind) => {
            let mut m = Map::new();
            m.insert("kind".into(), json!(kind.tag()));
            if kind == ModelKind::DoubleAlpha && args.alpha1.is_none() && args.alpha2.is_none() {
                m.insert("alpha1".into(), json!(0.1));
                m.insert("alpha2".into(), json!(0.2));
            }
            m
        }
        None if params.iter().all(|(_, v)| v.is_none()) => return Ok(()),
        None => match obj.get("model") {
            Some(Value::Object(m)) => m.clone(),
            _ => return Err(Failure::Usage("model: parameter flags given without --model".into())),
        },
    };
    for (key, v) in params {
        if let Some(v) = v {
            model.insert(key.into(), json!(v));
        }
    }
    obj.insert("model".into(), Value::Object(model));
    Ok(())
}

fn model_for_sample(args: &ModelArgs) -> Result<ModelSpec, Failure> {
    let mut obj = Map::new();
    obj.insert("model".into(), default_config()["model"].clone());
    apply_model(&mut obj, args)?;
    obj.insert("n_grid".into(), json!([1]));
    obj.insert("trials".into(), json!(1));
    obj.insert("master_seed".into(), json!(0));
    Ok(ExperimentConfig::from_value(&Value::Object(obj))?.model)
}

fn sample(args: SampleArgs) -> Outcome {
    let model = model_for_sample(&args.model)?;
    let stream = trial_stream(args.seed, args.n, 0).tagged("structure");
    let format = args.output.format.unwrap_or(OutputFormat::Json);
    let out = args.output.out.as_deref();
    match model {
        ModelSpec::ConstantP { p } => write_graph(&sample_gnp(args.n, p, &stream)?, format, out),
        ModelSpec::PowerLaw { alpha } => write_graph(&sample_power_law_graph(args.n, alpha, &stream)?, format, out),
        ModelSpec::DoubleAlpha { pair } => write_digraph(&sample_double_digraph(args.n, pair, &stream)?, format, out),
    }
}

fn write_graph(g: &Graph, format: OutputFormat, out: Option<&Path>) -> Outcome {
    write_to(out, |w| match format {
        OutputFormat::Json => write_json(w, g),
        OutputFormat::Csv => {
            writeln!(w, "a,b")?;
            g.edges().iter().try_for_each(|(a, b)| writeln!(w, "{a},{b}"))
        }
    })
}

fn write_digraph(g: &DoubleDigraph, format: OutputFormat, out: Option<&Path>) -> Outcome {
    write_to(out, |w| match format {
        OutputFormat::Json => write_json(w, g),
        OutputFormat::Csv => {
            writeln!(w, "relation,a,b")?;
            for rel in Relation::BOTH {
                for (a, b) in g.pairs(rel) {
                    writeln!(w, "{},{a},{b}", u8::from(rel))?;
                }
            }
            Ok(())
        }
    })
}

/// Reads a double digraph, falling back to a plain graph.
fn read_structure(path: &Path) -> Result<DoubleDigraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let is_digraph = value.get("r1").is_some() || value.get("r2").is_some();
    let parsed = if is_digraph {
        serde_json::from_value::<DoubleDigraph>(value)
    } else {
        serde_json::from_value::<Graph>(value).map(|g| DoubleDigraph::adjacency_of(&g))
    };
    parsed.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn stratify_file(args: StratifyArgs) -> Outcome {
    let g = read_structure(&args.input)?;
    let s = stratify(&g, args.root)?;
    let format = args.output.format.unwrap_or(OutputFormat::Json);
    write_to(args.output.out.as_deref(), |w| match format {
        OutputFormat::Json => write_json(w, &s),
        OutputFormat::Csv => write_levels(w, &s),
    })
}

fn write_levels(w: &mut dyn Write, s: &Stratification) -> io::Result<()> {
    writeln!(w, "k,node,step_kind")?;
    for (k, level) in s.levels().iter().enumerate() {
        let kind = k.checked_sub(1).map(|i| u8::from(s.step_kinds()[i]).to_string()).unwrap_or_default();
        for node in level {
            writeln!(w, "{k},{node},{kind}")?;
        }
    }
    Ok(())
}

fn write_json<T: serde::Serialize + ?Sized>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *w, value).map_err(io::Error::other)?;
    writeln!(w)
}

/// Writes the table in the configured format. A CSV written to a file also
/// gets its JSON mirror next to it, with a `.json` extension.
fn emit_table<R, I, S>(cfg: &ExperimentConfig, rows: I, summary: Option<S>) -> Outcome
where
    R: TableRow,
    I: IntoIterator<Item = R>,
    S: serde::Serialize,
{
    let spec = cfg.output.clone().unwrap_or(OutputSpec { path: None, format: OutputFormat::Csv });
    let rows: Vec<R> = rows.into_iter().collect();
    let mirror = json_mirror(cfg, &rows, summary);
    let out = spec.path.as_deref();
    match spec.format {
        OutputFormat::Json => write_to(out, |w| write_json(w, &mirror)),
        OutputFormat::Csv => {
            write_to(out, |w| write_csv(w, &rows))?;
            match out {
                Some(path) if path.extension().is_none_or(|e| e != "json") => {
                    write_to(Some(&path.with_extension("json")), |w| write_json(w, &mirror))
                }
                _ => Ok(()),
            }
        }
    }
}

fn write_to(out: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Outcome {
    let result = match out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            body(&mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w).and_then(|_| w.flush())
        }
    };
    result.map_err(|e| match out {
        Some(path) => Failure::Runtime(format!("{}: {e}", path.display())),
        None => Failure::Runtime(format!("standard output: {e}")),
    })
}
