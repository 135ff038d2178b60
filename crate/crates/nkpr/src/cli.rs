//! Argument parsing, dispatch and exit codes.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nkpr_core::algorithms::{dj_classify, dj_final_state, period_classify, BooleanFunction, PeriodInstance, DJ_CLASSES};
use nkpr_core::lattice::{verify_lattice, EventLattice};
use nkpr_core::learning::run_learning;
use nkpr_core::recognition::{classify_samples, classify_state, ClassificationResult, Metric};
use nkpr_core::tomography::{run_tomography, ObservableSet};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::format::{counts_to_indices, CountsFile, DensityFile, ModelFile, PovmFile, ScenarioFile};
use crate::output::render;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON in {}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Domain(#[from] nkpr_core::Error),
}

impl CliError {
    /// 0 ok, 1 domain, 2 usage, 3 I/O, 4 malformed JSON.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Read { .. } | CliError::Write { .. } => 3,
            CliError::Json { .. } => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(_) => "domain",
            CliError::Usage(_) => "usage",
            CliError::Read { .. } | CliError::Write { .. } => "io",
            CliError::Json { .. } => "json",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind(), "code": self.exit_code(), "message": self.to_string()}})
    }
}

#[derive(Debug, Parser)]
#[command(name = "nkpr", version, about = "Pattern recognition over classical and quantum probabilistic models")]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a state by distance, or measurement counts by Bayes' rule.
    Classify(ClassifyArgs),
    /// Quantum algorithms cast as recognition problems.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Event-lattice checks.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Run a learning scenario and report the entropy trace.
    Learn {
        #[arg(long, value_name = "FILE")]
        scenario: PathBuf,
    },
    /// Finite-shot tomography of a known state.
    Tomography {
        #[arg(long = "true-state", value_name = "FILE")]
        true_state: PathBuf,
        #[arg(long)]
        shots: u64,
    },
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, value_name = "FILE")]
    pub model: PathBuf,
    /// State to classify by distance.
    #[arg(long, value_name = "FILE", required_unless_present = "counts", conflicts_with = "counts")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MetricArg::Trace)]
    pub metric: MetricArg,
    /// Outcome counts keyed by POVM label.
    #[arg(long, value_name = "FILE", requires = "povm")]
    pub counts: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "counts")]
    pub povm: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Trace,
    Fidelity,
    Hs,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Trace => Metric::Trace,
            MetricArg::Fidelity => Metric::Fidelity,
            MetricArg::Hs => Metric::HilbertSchmidt,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// Deutsch-Jozsa on one of the four one-bit functions.
    Dj {
        #[arg(long, value_enum)]
        function: FunctionArg,
    },
    /// Period finding on f(x) = x mod r over Z_N.
    Period {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "r")]
        r: usize,
        #[arg(long, default_value_t = 0)]
        x0: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    F1,
    F2,
    F3,
    F4,
}

impl From<FunctionArg> for BooleanFunction {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::F1 => BooleanFunction::F1,
            FunctionArg::F2 => BooleanFunction::F2,
            FunctionArg::F3 => BooleanFunction::F3,
            FunctionArg::F4 => BooleanFunction::F4,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum LatticeAction {
    /// State axioms, orthomodularity and distributivity on random samples.
    Verify {
        #[arg(long = "type", value_enum)]
        kind: LatticeKind,
        /// Number of atoms (boolean).
        #[arg(long)]
        atoms: Option<usize>,
        /// Hilbert space dimension (projection).
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeKind {
    Boolean,
    Projection,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_owned(),
        source,
    })
}

fn to_value(x: impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn classification(model_names: Vec<&str>, r: &ClassificationResult) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("class".into(), json!(model_names[r.decided]));
    out.insert("decided".into(), json!(r.decided));
    out.insert("mode".into(), json!(r.mode.as_str()));
    out.insert("classes".into(), json!(model_names));
    out.insert("posteriors".into(), json!(r.posteriors));
    out.insert("scores".into(), json!(r.scores));
    out
}

fn classify(args: &ClassifyArgs) -> Result<Value, CliError> {
    let model_file: ModelFile = read_json(&args.model)?;
    match (&args.input, &args.counts, &args.povm) {
        (Some(input), None, None) => {
            let input: DensityFile = read_json(input)?;
            let model = model_file.to_model()?;
            let metric = Metric::from(args.metric);
            let r = classify_state(&model, &input.to_state()?, metric)?;
            let mut out = classification(model.names(), &r);
            out.insert("metric".into(), json!(metric.as_str()));
            Ok(Value::Object(out))
        }
        (None, Some(counts), Some(povm)) => {
            let counts: CountsFile = read_json(counts)?;
            let povm: PovmFile = read_json(povm)?;
            let model = model_file.to_model()?;
            let povm = povm.to_povm()?;
            let r = classify_samples(&model, &povm, &counts_to_indices(&counts, &povm)?)?;
            let mut out = classification(model.names(), &r);
            out.insert("shots".into(), json!(counts.values().sum::<u64>()));
            Ok(Value::Object(out))
        }
        _ => Err(CliError::Usage("classify needs either --input or both --counts and --povm".into())),
    }
}

fn demo(demo: &Demo, seed: u64) -> Result<Value, CliError> {
    match *demo {
        Demo::Dj { function } => {
            let f = BooleanFunction::from(function);
            let r = dj_classify(&dj_final_state(f))?;
            Ok(json!({
                "function": f.id(),
                "class": DJ_CLASSES[r.decided],
                "classes": DJ_CLASSES,
                "posterior": r.posteriors,
            }))
        }
        Demo::Period { n, r, x0, trials } => {
            let inst = PeriodInstance::new(n, r, x0)?;
            let report = period_classify(&inst, trials, seed)?;
            let distribution: Map<String, Value> =
                report.distribution.iter().enumerate().map(|(c, p)| (c.to_string(), json!(p))).collect();
            let counts: Map<String, Value> = report.counts.iter().map(|(c, k)| (c.to_string(), json!(k))).collect();
            Ok(json!({
                "n": n,
                "r": r,
                "x0": x0,
                "trials": trials,
                "seed": seed,
                "distribution": distribution,
                "class_probabilities": report.class_probabilities,
                "counts": counts,
                "success_rate": report.success_rate,
                "theoretical": report.theoretical,
            }))
        }
    }
}

fn lattice(action: &LatticeAction, seed: u64) -> Result<Value, CliError> {
    let LatticeAction::Verify {
        kind,
        atoms,
        dim,
        samples,
        tol,
    } = *action;
    let lattice = match (kind, atoms, dim) {
        (LatticeKind::Boolean, Some(atoms), None) => EventLattice::boolean(atoms)?,
        (LatticeKind::Projection, None, Some(dim)) => EventLattice::projection(dim)?,
        (LatticeKind::Boolean, _, _) => return Err(CliError::Usage("--type boolean takes --atoms and not --dim".into())),
        (LatticeKind::Projection, _, _) => {
            return Err(CliError::Usage("--type projection takes --dim and not --atoms".into()))
        }
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::Usage("--tol must be a nonnegative number".into()));
    }
    let report = verify_lattice(&lattice, samples, seed, tol)?;
    Ok(json!({
        "type": kind.to_possible_value().expect("visible variant").get_name(),
        "samples": samples,
        "seed": seed,
        "tol": tol,
        "normalization": report.normalization,
        "additivity_max": report.additivity_max,
        "axioms_pass": report.axioms_pass,
        "orthomodular_tested": report.orthomodularity.tested,
        "orthomodular_skipped": report.orthomodularity.skipped,
        "orthomodular_failures": report.orthomodularity.failures,
        "distributivity_tested": report.distributivity.tested,
        "distributivity_violations": report.distributivity.violations,
    }))
}

fn learn(path: &Path) -> Result<Value, CliError> {
    let file: ScenarioFile = read_json(path)?;
    let trace = run_learning(&file.to_scenario()?)?;
    Ok(json!({
        "times": trace.times,
        "entropies": trace.entropies,
        "success": trace.success,
        "final_state": to_value(DensityFile::from(trace.states.last().expect("initial state is recorded"))),
    }))
}

fn tomography(path: &Path, shots: u64, seed: u64) -> Result<Value, CliError> {
    let file: DensityFile = read_json(path)?;
    let rho = file.to_state()?;
    let basis = ObservableSet::standard(rho.dim())?;
    let r = run_tomography(&rho, &basis, shots, seed)?;
    let error = r.estimate.matrix().distance(rho.matrix())?;
    Ok(json!({
        "dim": rho.dim(),
        "shots": shots,
        "shots_used": r.shots_used,
        "seed": seed,
        "observables": basis.labels(),
        "estimate": to_value(DensityFile::from(&r.estimate)),
        "frobenius_error": error,
    }))
}

/// Executes a parsed command and returns its report.
pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Classify(args) => classify(args),
        Command::Demo { demo: d } => demo(d, cli.seed),
        Command::Lattice { action } => lattice(action, cli.seed),
        Command::Learn { scenario } => learn(scenario),
        Command::Tomography { true_state, shots } => tomography(true_state, *shots, cli.seed),
    }
}

fn write_report(cli: &Cli, text: &str) -> Result<(), CliError> {
    if let Some(path) = &cli.out {
        fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
    }
    Ok(())
}

fn fail(err: &CliError) -> u8 {
    eprintln!("nkpr: {err}");
    print!("{}", render(err.to_json()));
    err.exit_code()
}

/// Parses `args`, runs the command, prints the report (or an error object)
/// on stdout and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let _ = e.print();
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let err = CliError::Usage(first.trim_start_matches("error: ").to_string());
            print!("{}", render(err.to_json()));
            return err.exit_code();
        }
    };
    let text = match execute(&cli) {
        Ok(report) => render(report),
        Err(err) => return fail(&err),
    };
    if let Err(err) = write_report(&cli, &text) {
        return fail(&err);
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
    0
}
