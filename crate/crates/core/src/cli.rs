//! The `dyckshift` command line.
//!
//! Exit codes: 0 success, 1 failed check, 2 usage error, 3 resource limit.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::baker::{scatter_with_budget, solve_periodic_point, BakerParams};
use crate::dyck::PeriodClass;
use crate::enumeration::{ClassFilter, CountReport, Enumerator, PeriodicSetQuery, DEFAULT_BUDGET};
use crate::error::Error;
use crate::krieger::{mme_cylinder, Side};
use crate::measures::{convergence_series, Ensemble, Target};
use crate::oracle::{MonteCarloConfig, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_WINDOW_RADIUS, GENERATOR};
use crate::rational::{format_rational, parse_rational, to_decimal, DEFAULT_PRECISION};
use crate::report::{
    convergence_json, orbit_json, write_convergence_csv, write_scatter_csv, write_words_csv, Metadata,
};
use crate::verify::{run_suite, Suite};
use crate::word::Alphabet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dyckshift", version, about = "Periodic points and measures of maximal entropy of the Dyck shift")]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Where to write the metadata sidecar (default: `<out>.meta.json`).
    #[arg(long, global = true)]
    metadata: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form size of a periodic class, optionally confirmed by enumeration.
    Count(CountArgs),
    /// List the periodic words of one class as CSV.
    Enumerate(EnumerateArgs),
    /// Empirical cylinder frequencies of an ensemble against a measure of maximal entropy.
    Measure(MeasureArgs),
    /// Exact cylinder mass under ν_α or ν_β.
    Mme(MmeArgs),
    /// Heterochaos baker maps.
    #[command(subcommand)]
    Baker(BakerCommand),
    /// Run oracle cross-checks; exits 1 if any fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Number of bracket pairs.
    #[arg(long = "M", default_value_t = 2)]
    pairs: usize,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "all")]
    class: String,
    /// Also enumerate and report the enumerated count.
    #[arg(long)]
    enumerate: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    class: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    #[command(flatten)]
    common: Common,
    /// Period, or comma-separated periods.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// alpha, beta, zero or union.
    #[arg(long)]
    class: String,
    #[arg(long = "cyl-len")]
    cyl_len: usize,
    /// alpha, beta or mixture (default: matches the class).
    #[arg(long)]
    target: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Debug, Args)]
struct MmeArgs {
    #[arg(long = "M", default_value_t = 2)]
    pairs: usize,
    #[arg(long)]
    side: String,
    /// Comma-separated symbols, e.g. `a1,b2`.
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Debug, Subcommand)]
enum BakerCommand {
    /// Exact periodic point coded by a word.
    Solve(SolveArgs),
    /// Projected periodic points of one class over several periods.
    Scatter(ScatterArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Debug, Args)]
struct ScatterArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    a: String,
    /// Given: three-dimensional map with an `xs` column. Omitted: planar map.
    #[arg(long)]
    b: Option<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    periods: Vec<usize>,
    #[arg(long)]
    class: String,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => EXIT_RESOURCE,
            Error::ConstraintViolation { .. } | Error::MatchSearchExceeded { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_USAGE, message: format!("{flag}: {e}") }
}

fn flag<T>(name: &str, r: crate::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::ResourceLimit { .. } => e.into(),
        e => usage(name, e),
    })
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) }
}

/// Output sink: a file (with metadata sidecar) or stdout.
struct Output {
    path: Option<PathBuf>,
    metadata: Option<PathBuf>,
    meta: Metadata,
}

impl Output {
    fn write(&self, bytes: &[u8]) -> Result<(), Failure> {
        match &self.path {
            Some(p) => {
                std::fs::write(p, bytes).map_err(|e| io_failure(p, e))?;
                if self.metadata.is_none() {
                    self.meta.write_beside(p)?;
                }
            }
            None => std::io::stdout().write_all(bytes).map_err(|e| io_failure(Path::new("<stdout>"), e))?,
        }
        if let Some(m) = &self.metadata {
            let text = serde_json::to_string_pretty(&self.meta).expect("metadata serializes") + "\n";
            std::fs::write(m, text).map_err(|e| io_failure(m, e))?;
        }
        Ok(())
    }

    fn json<T: serde::Serialize>(&self, value: &T) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value).expect("report serializes") + "\n";
        self.write(text.as_bytes())
    }
}

/// Parse `argv` (including the program name) and execute; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let command: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli, command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: Cli, command: Vec<String>) -> Result<i32, Failure> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("--threads", "must be at least 1"));
        }
        // A pool may already exist when `run` is called twice in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let metadata = cli.metadata;
    let meta = Metadata::new(command);
    let sink = |path: Option<&PathBuf>, meta: Metadata| Output { path: path.cloned(), metadata: metadata.clone(), meta };

    match cli.command {
        Command::Count(a) => {
            let class: ClassFilter = flag("--class", a.class.parse())?;
            let q = flag("--n", PeriodicSetQuery::new(a.common.pairs, a.n, class))?;
            let report = if a.enumerate {
                CountReport::with_enumeration(&q, a.budget)?
            } else {
                CountReport::closed_form(&q)
            };
            sink(a.common.out.as_ref(), meta).json(&report)?;
            Ok(if report.consistent() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Enumerate(a) => {
            let class: ClassFilter = flag("--class", a.class.parse())?;
            let q = flag("--n", PeriodicSetQuery::new(a.common.pairs, a.n, class))?;
            let words = Enumerator::new(q).with_budget(a.budget).collect()?;
            let mut buf = Vec::new();
            write_words_csv(&mut buf, words)?;
            sink(a.common.out.as_ref(), meta).write(&buf)?;
            Ok(EXIT_OK)
        }
        Command::Measure(a) => {
            let ab = flag("--M", Alphabet::new(a.common.pairs))?;
            let ensemble: Ensemble = flag("--class", a.class.parse())?;
            let target = match &a.target {
                Some(t) => flag("--target", t.parse())?,
                None => Target::for_ensemble(ensemble)
                    .ok_or_else(|| usage("--target", format!("required for the {ensemble} ensemble")))?,
            };
            if a.cyl_len == 0 {
                return Err(usage("--cyl-len", "must be at least 1"));
            }
            if let Some(&bad) = a.n.iter().find(|&&n| n == 0) {
                return Err(usage("--n", format!("period {bad} must be at least 1")));
            }
            let report = convergence_series(&ab, ensemble, a.cyl_len, &a.n, target)?;
            let out = sink(a.common.out.as_ref(), meta);
            match a.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_convergence_csv(&mut buf, &report, a.precision)?;
                    out.write(&buf)?;
                }
                Format::Json => out.json(&convergence_json(&report, a.precision))?,
            }
            Ok(EXIT_OK)
        }
        Command::Mme(a) => {
            let ab = flag("--M", Alphabet::new(a.pairs))?;
            let side: Side = flag("--side", a.side.parse())?;
            let v = flag("--word", ab.parse_word(&a.word))?;
            let value = mme_cylinder(&ab, side, &v);
            println!(
                "{}",
                serde_json::json!({
                    "M": a.pairs,
                    "side": side.as_str(),
                    "word": v.to_string(),
                    "value": format_rational(value.value()),
                    "decimal": to_decimal(value.value(), a.precision),
                })
            );
            Ok(EXIT_OK)
        }
        Command::Baker(BakerCommand::Solve(a)) => {
            let p = baker_params(a.common.pairs, &a.a, a.b.as_deref())?;
            let w = flag("--word", p.alphabet().parse_word(&a.word))?;
            let sol = flag("--word", solve_periodic_point(&p, &w))?;
            sink(a.common.out.as_ref(), meta).json(&orbit_json(&sol, a.precision))?;
            Ok(EXIT_OK)
        }
        Command::Baker(BakerCommand::Scatter(a)) => {
            let p = baker_params(a.common.pairs, &a.a, a.b.as_deref())?;
            let class: PeriodClass = flag("--class", a.class.parse())?;
            if class == PeriodClass::Zero {
                return Err(usage("--class", "must be alpha or beta"));
            }
            if let Some(&bad) = a.periods.iter().find(|&&n| n == 0) {
                return Err(usage("--periods", format!("period {bad} must be at least 1")));
            }
            let rows = scatter_with_budget(&p, &a.periods, class, a.b.is_some(), a.budget)?;
            let mut buf = Vec::new();
            write_scatter_csv(&mut buf, &rows, a.precision)?;
            sink(a.common.out.as_ref(), meta).write(&buf)?;
            let boundary = rows.iter().filter(|r| !r.in_lambda).count();
            eprintln!("{} points, {boundary} on tile boundaries", rows.len());
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let suite: Suite = flag("--suite", a.suite.parse())?;
            if a.samples == 0 {
                return Err(usage("--samples", "must be at least 1"));
            }
            let cfg = MonteCarloConfig { samples: a.samples, window_radius: DEFAULT_WINDOW_RADIUS, seed: a.seed };
            let reports = run_suite(suite, &cfg)?;
            let mut meta = meta;
            meta.seed = Some(a.seed);
            meta.generator = Some(GENERATOR.to_string());
            sink(a.out.as_ref(), meta).json(&reports)?;
            Ok(if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn baker_params(pairs: usize, a: &str, b: Option<&str>) -> Result<BakerParams, Failure> {
    let a = flag("--a", parse_rational(a))?;
    match b {
        Some(b) => {
            let b = flag("--b", parse_rational(b))?;
            flag("--a/--b", BakerParams::new(pairs, a, b))
        }
        None => flag("--a", BakerParams::planar(pairs, a)),
    }
}
