//! The `angles` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 validation failure,
//! 3 generator retry exhaustion.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use angles_core::constructions::{Built, ConstructionKind, ConstructionParams, DEFAULT_BETA};
use angles_core::counters::{self, ChainPolicy, TripleClasses};
use angles_core::predicates::{verify_general_position, Tolerance};
use angles_core::{ClusterStats, Dim, GeomError, Mode, DEFAULT_EPS};

use crate::fit::fit_loglog;
use crate::io::{parse_config_with, write_config, ParseOptions};
use crate::sweep::{self, Quantity, SweepOptions};
use crate::{parse_angle, PinKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RETRIES: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "angles", version, about = "Generate point configurations and count their distinct angles")]
pub struct Cli {
    /// Cap on worker threads. Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated configuration as a point file.
    Generate(Source),
    /// Check general position; exits 2 on any violation.
    Verify(Source),
    /// Number of distinct angles.
    Count(Source),
    /// Number of distinct pinned angles.
    Pinned {
        #[command(flatten)]
        source: Source,
        #[arg(long = "pin-kind")]
        pin_kind: PinKind,
        /// First pinned point (defaults to the construction's A, else 0).
        #[arg(long)]
        a: Option<usize>,
        /// Second pinned point (defaults to the construction's B, else 1).
        #[arg(long)]
        b: Option<usize>,
    },
    /// Number of distinct k-chains.
    Chains {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: usize,
        /// Require all k+2 points of a chain to be distinct.
        #[arg(long = "chains-all-distinct")]
        all_distinct: bool,
    },
    /// Angle energy and the Cauchy–Schwarz bound it implies.
    Energy(Source),
    /// Points that touch every angle class.
    Selfsim(Source),
    /// Evaluate quantities over a list of sizes and write CSV.
    Sweep(SweepArgs),
    /// Fit a power law to sweep CSV rows.
    Fit(FitArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Params {
    #[arg(long, default_value_t = DEFAULT_BETA)]
    pub beta: f64,
    /// Radians; multiples of pi such as `pi/4` are accepted.
    #[arg(long, default_value = "pi/4", value_parser = parse_angle)]
    pub alpha: f64,
    /// Sunshine rays; sets n = m² + 1.
    #[arg(long)]
    pub m: Option<usize>,
    /// Sunshine radius base.
    #[arg(long, default_value_t = 2.0)]
    pub base: f64,
    /// Dimension of random configurations.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub dim: u8,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
}

impl Params {
    fn construction(&self, n: usize) -> ConstructionParams {
        ConstructionParams {
            n,
            beta: self.beta,
            alpha: self.alpha,
            m: self.m.unwrap_or(5),
            exponent_base: self.base,
            dim: if self.dim == 3 { Dim::Three } else { Dim::Two },
            seed: self.seed,
        }
    }
}

/// Where a configuration comes from: a point file or a generator.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Point file to read.
    #[arg(long = "in", conflicts_with = "construction")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub construction: Option<ConstructionKind>,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Require exact coordinates; decimals in point files are read exactly.
    #[arg(long)]
    pub exact: bool,
    /// Output file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub construction: ConstructionKind,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub n: Vec<usize>,
    /// Comma-separated quantities: distinct_angles, pinned_<kind>, chains_<k>,
    /// energy, bound.
    #[arg(long = "quantity", value_delimiter = ',', default_value = "distinct_angles")]
    pub quantities: Vec<Quantity>,
    #[arg(long = "chains-all-distinct")]
    pub all_distinct: bool,
    /// Write 0 in the elapsed_ms column so output is byte-reproducible.
    #[arg(long = "no-timing")]
    pub no_timing: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Sweep CSV to read.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Use only rows of this quantity.
    #[arg(long)]
    pub quantity: Option<String>,
    /// Use only rows of this construction.
    #[arg(long)]
    pub construction: Option<ConstructionKind>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        let code = match e {
            GeomError::RetriesExhausted { .. } => EXIT_RETRIES,
            GeomError::NotGeneralPosition { .. } => EXIT_VALIDATION,
            _ => EXIT_USAGE,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn load(src: &Source) -> Result<Built, Failure> {
    match (&src.input, src.construction) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let mut config = parse_config_with(
                &text,
                ParseOptions {
                    force_exact: src.exact,
                },
            )
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            config.label = path.display().to_string();
            Ok(Built { config, a: None, b: None })
        }
        (None, Some(kind)) => {
            let n = match (kind, src.params.m) {
                (ConstructionKind::Sunshine, Some(m)) => m * m + 1,
                _ => src.n,
            };
            let built = kind.build(&src.params.construction(n))?;
            if src.exact && built.config.mode() != Mode::Exact {
                return Err(usage(format!(
                    "--exact: {kind} has non-rational coordinates; only random and point files are exact"
                )));
            }
            Ok(built)
        }
        _ => Err(usage("give exactly one of --in or --construction")),
    }
}

fn note_stats(err: &mut dyn Write, stats: Option<ClusterStats>) {
    if let Some(st) = stats {
        let _ = writeln!(err, "clusters: {st}");
    }
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string())),
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Generate(src) => {
            let built = load(&src)?;
            let mut config = built.config;
            match (built.a, built.b) {
                (Some(a), Some(b)) => config.label = format!("{}; A = {a}, B = {b}", config.label),
                (Some(a), None) => config.label = format!("{}; A = {a}", config.label),
                _ => {}
            }
            emit(out, &src.out, &write_config(&config))?;
        }
        Command::Verify(src) => {
            let built = load(&src)?;
            let report = verify_general_position(&built.config, Tolerance::uniform(src.params.eps));
            let mut text = format!(
                "general_position {}\ncollinear_triples {}\nconcyclic_quadruples {}\n",
                report.is_general_position,
                report.collinear_triples.len(),
                report.concyclic_quadruples.len()
            );
            for [i, j, k] in &report.collinear_triples {
                text.push_str(&format!("collinear {i} {j} {k}\n"));
            }
            for [i, j, k, l] in &report.concyclic_quadruples {
                text.push_str(&format!("concyclic {i} {j} {k} {l}\n"));
            }
            emit(out, &src.out, &text)?;
            if !report.is_general_position {
                return Ok(EXIT_VALIDATION);
            }
        }
        Command::Count(src) => {
            let built = load(&src)?;
            let t = TripleClasses::scan(&built.config, src.params.eps);
            note_stats(err, t.stats());
            emit(out, &src.out, &format!("{}\n", t.num_classes()))?;
        }
        Command::Pinned { source, pin_kind, a, b } => {
            let built = load(&source)?;
            let a = a.or(built.a).unwrap_or(0);
            let b = b.or(built.b).unwrap_or(1);
            let (count, stats) =
                counters::count_pinned_with_stats(&built.config, pin_kind.spec(a, b), source.params.eps)?;
            note_stats(err, stats);
            emit(out, &source.out, &format!("{count}\n"))?;
        }
        Command::Chains { source, k, all_distinct } => {
            let built = load(&source)?;
            let policy = if all_distinct {
                ChainPolicy::AllDistinct
            } else {
                ChainPolicy::WindowDistinct
            };
            let t = TripleClasses::scan(&built.config, source.params.eps);
            note_stats(err, t.stats());
            let keys = counters::chain_keys(&t, k, policy)?;
            emit(out, &source.out, &format!("{}\n", keys.len()))?;
        }
        Command::Energy(src) => {
            let built = load(&src)?;
            let hist = counters::angle_histogram(&built.config, src.params.eps);
            note_stats(err, hist.stats);
            let energy = counters::energy(&hist);
            let (bound, holds) = counters::cauchy_schwarz_check(&hist)?;
            let text = format!(
                "triples {}\nclasses {}\nenergy {energy}\nbound {bound}\nbound_holds {holds}\n",
                hist.total_triples,
                hist.num_classes()
            );
            emit(out, &src.out, &text)?;
        }
        Command::Selfsim(src) => {
            let built = load(&src)?;
            let t = TripleClasses::scan(&built.config, src.params.eps);
            note_stats(err, t.stats());
            let pts: Vec<String> = counters::self_similar_points(&t).iter().map(|i| i.to_string()).collect();
            emit(out, &src.out, &format!("{}\n", pts.join(" ")))?;
        }
        Command::Sweep(args) => {
            let opts = SweepOptions {
                eps: args.params.eps,
                chain_policy: if args.all_distinct {
                    ChainPolicy::AllDistinct
                } else {
                    ChainPolicy::WindowDistinct
                },
                timing: !args.no_timing,
            };
            let result = sweep::run_sweep(
                args.construction,
                &args.params.construction(0),
                &args.n,
                &args.quantities,
                &opts,
            );
            for (n, why) in &result.skipped {
                let _ = writeln!(err, "warning: skipped n = {n}: {why}");
            }
            for (n, q, st) in &result.stats {
                let _ = writeln!(err, "clusters n={n} {q}: {st}");
            }
            emit(out, &args.out, &sweep::to_csv_string(&result.rows))?;
        }
        Command::Fit(args) => {
            let text = fs::read_to_string(&args.input)
                .map_err(|e| usage(format!("{}: {e}", args.input.display())))?;
            let rows: Vec<_> = sweep::read_csv(&text)
                .map_err(|e| usage(format!("{}: {e}", args.input.display())))?
                .into_iter()
                .filter(|r| args.quantity.as_ref().is_none_or(|q| &r.quantity == q))
                .filter(|r| args.construction.is_none_or(|c| r.construction == c.name()))
                .collect();
            let fit = fit_loglog(&rows).map_err(|e| usage(e.to_string()))?;
            let text = format!(
                "slope {}\nintercept {}\nr_squared {}\n",
                fit.slope, fit.intercept, fit.r_squared
            );
            emit(out, &args.out, &text)?;
        }
    }
    Ok(EXIT_OK)
}

/// Run the command line with explicit arguments (including the program
/// name) and output streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            if informational {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(err, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(err, "error: --threads must be at least 1");
            return EXIT_USAGE;
        }
        // a pool may already exist when called more than once in-process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
