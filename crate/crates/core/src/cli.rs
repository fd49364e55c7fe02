//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when the run
//! disagrees with the requested verification oracle.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dataset::{generate, ingest_csv, to_csv, Corpus};
use crate::error::{Error, Result};
use crate::hull::{construct_hull, HullConfig, InitStrategy, ProcessingOrder};
use crate::oracle::{classify_all_bruteforce, hull_2d};
use crate::points::{PointId, PointSet, Tolerances};
use crate::report::{InputSummary, RunReport, Verification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "exhull", version, about = "Exact extreme points of finite point sets in any dimension")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the extreme points of a CSV file or a generated corpus.
    Run(RunArgs),
    /// Write a generated corpus as CSV.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// CSV input, one point per row, optional header.
    #[arg(long, value_name = "PATH", conflicts_with = "generate", required_unless_present = "generate")]
    pub input: Option<PathBuf>,
    /// Generate the input instead of reading it.
    #[arg(long, value_name = "KIND", value_parser = parse_corpus)]
    pub generate: Option<Corpus>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = InitArg::Simplex)]
    pub init: InitArg,
    /// Distance below which a point counts as enclosed.
    #[arg(long, value_name = "X")]
    pub eps_zero: Option<f64>,
    #[arg(long, value_enum, default_value_t = OrderArg::Index)]
    pub order: OrderArg,
    /// Processing order for `--order file`: 1-based labels separated by
    /// whitespace or commas. Unlisted points follow in index order.
    #[arg(long, value_name = "PATH")]
    pub order_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VerifyArg::None)]
    pub verify: VerifyArg,
    /// JSON report destination, written atomically.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    /// SVG figure destination (2-dimensional input only).
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Keep per-iteration distances and residuals in the report and figure.
    #[arg(long)]
    pub trace: bool,
    /// Subtract the centroid before the run. Extreme indices are unaffected.
    #[arg(long)]
    pub precenter: bool,
    /// Record wall time in the report, which makes it run-dependent.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_parser = parse_corpus)]
    pub kind: Corpus,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Destination file; standard output when absent.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    Simplex,
    SingleSeed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Index,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyArg {
    None,
    Oracle,
    #[value(name = "2d")]
    Planar,
}

fn parse_corpus(s: &str) -> std::result::Result<Corpus, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Installs the stderr logger, filtered by `EXHULL_LOG` (default `warn`).
pub fn init_logging() {
    let env = env_logger::Env::new().filter_or("EXHULL_LOG", "warn");
    let _ = env_logger::Builder::from_env(env).format_timestamp(None).try_init();
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => run(&args),
        Command::Generate(args) => generate_cmd(&args).map(|()| EXIT_OK),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

fn generate_cmd(args: &GenerateArgs) -> Result<()> {
    let ps = generate(args.kind, args.n, args.m, args.seed)?;
    let text = to_csv(&ps);
    match &args.output {
        Some(path) => crate::report::write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(args: &RunArgs) -> Result<(PointSet, InputSummary)> {
    let (ps, source, dropped_lines) = match (&args.input, args.generate) {
        (Some(path), _) => {
            if args.n.is_some() || args.m.is_some() || args.seed.is_some() {
                return Err(Error::Usage("--n, --m and --seed only apply to --generate".into()));
            }
            let ing = ingest_csv(path).map_err(|e| match e {
                Error::Io(io) => Error::Usage(format!("cannot read {}: {io}", path.display())),
                e => e,
            })?;
            if !ing.dropped_lines.is_empty() {
                log::warn!("dropped duplicate rows on lines {:?}", ing.dropped_lines);
            }
            (ing.points, path.display().to_string(), ing.dropped_lines)
        }
        (None, Some(kind)) => {
            let (n, m) = match (args.n, args.m) {
                (Some(n), Some(m)) => (n, m),
                _ => return Err(Error::Usage("--generate needs --n and --m".into())),
            };
            let seed = args.seed.unwrap_or(0);
            let ps = generate(kind, n, m, seed)?;
            (ps, format!("generate:{kind}:n={n}:m={m}:seed={seed}"), Vec::new())
        }
        (None, None) => return Err(Error::Usage("one of --input or --generate is required".into())),
    };
    let ps = if args.precenter { ps.centered() } else { ps };
    let summary = InputSummary { n: ps.len(), m: ps.dim(), source, dropped_lines, precentered: args.precenter };
    Ok((ps, summary))
}

/// Reads 1-based labels separated by whitespace or commas.
fn read_order_file(path: &Path, n: usize) -> Result<Vec<PointId>> {
    let text = std::fs::read_to_string(path)?;
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let label: usize = tok
                .parse()
                .map_err(|_| Error::Parse { line: i + 1, message: format!("invalid point label {tok:?}") })?;
            if label == 0 || label > n {
                return Err(Error::Parse { line: i + 1, message: format!("label {label} outside 1..={n}") });
            }
            ids.push(PointId(label - 1));
        }
    }
    Ok(ids)
}

fn config(args: &RunArgs, ps: &PointSet) -> Result<HullConfig> {
    let mut tol = Tolerances::for_points(ps);
    if let Some(eps) = args.eps_zero {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::Usage(format!("--eps-zero must be positive and finite, got {eps}")));
        }
        tol = tol.with_eps_zero(eps);
    }
    tol.validate()?;
    let init = match args.init {
        InitArg::Simplex => InitStrategy::Simplex,
        InitArg::SingleSeed => InitStrategy::SingleSeed(None),
    };
    let order = match (args.order, &args.order_file) {
        (OrderArg::Index, None) => ProcessingOrder::Index,
        (OrderArg::Index, Some(_)) => return Err(Error::Usage("--order-file requires --order file".into())),
        (OrderArg::File, Some(path)) => ProcessingOrder::Given(read_order_file(path, ps.len())?),
        (OrderArg::File, None) => return Err(Error::Usage("--order file requires --order-file PATH".into())),
    };
    Ok(HullConfig::new(tol).with_init(init).with_order(order))
}

fn labels(ids: &[usize]) -> String {
    ids.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Executes `run`; `Ok` carries the exit code.
pub fn run(args: &RunArgs) -> Result<i32> {
    let (ps, summary) = load(args)?;
    if args.svg.is_some() && ps.dim() != 2 {
        return Err(Error::Usage(format!("--svg needs 2-dimensional input, got m={}", ps.dim())));
    }
    if args.verify == VerifyArg::Planar && ps.dim() != 2 {
        return Err(Error::Usage(format!("--verify 2d needs 2-dimensional input, got m={}", ps.dim())));
    }
    let cfg = config(args, &ps)?;

    let start = Instant::now();
    let result = construct_hull(&ps, &cfg)?;
    let elapsed = start.elapsed().as_secs_f64();

    let mut report = RunReport::new(&ps, summary, &cfg, &result, args.trace);
    let expected: Option<(&str, BTreeSet<PointId>)> = match args.verify {
        VerifyArg::None => None,
        VerifyArg::Oracle => Some(("oracle", classify_all_bruteforce(&ps, &cfg.tolerances)?)),
        VerifyArg::Planar => Some(("2d", hull_2d(&ps)?)),
    };
    report.verification = expected.map(|(mode, set)| Verification::compare(mode, &result.extreme_ids, &set));
    if args.timing {
        report.wall_seconds = Some(elapsed);
    }

    println!("points: n={} m={}", report.input.n, report.input.m);
    println!("extremes ({}): {}", report.extremes.count, labels(&report.extremes.labels));
    println!(
        "qp solves: {} (growth {}, refinements {}, verification {})",
        report.counters.total_qp_solves,
        report.counters.growth_iterations,
        report.counters.refine_steps,
        report.counters.verification_solves
    );
    if args.timing {
        println!("wall time: {elapsed:.6} s");
    }

    if let Some(path) = &args.report {
        report.write_atomic(path)?;
    }
    if let Some(path) = &args.svg {
        crate::svg::write(path, &ps, &report)?;
    }

    match &report.verification {
        Some(v) if !v.agrees => {
            eprintln!("verification ({}) mismatch", v.mode);
            eprintln!("  found by oracle only: {}", labels(&v.missing.labels));
            eprintln!("  found by construction only: {}", labels(&v.extra.labels));
            Ok(EXIT_MISMATCH)
        }
        Some(v) => {
            println!("verification ({}): agrees", v.mode);
            Ok(EXIT_OK)
        }
        None => Ok(EXIT_OK),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("exhull").chain(args.iter().copied()))
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_run_flags() {
        let cli = parse(&["run", "--generate", "sphere", "--n", "50", "--m", "4", "--verify", "oracle", "--trace"]).unwrap();
        let Command::Run(a) = cli.command else { panic!() };
        assert_eq!(a.generate, Some(Corpus::Sphere));
        assert_eq!((a.n, a.m, a.verify, a.trace), (Some(50), Some(4), VerifyArg::Oracle, true));
        assert_eq!(a.init, InitArg::Simplex);

        let cli = parse(&["run", "--input", "x.csv", "--verify", "2d", "--init", "single-seed"]).unwrap();
        let Command::Run(a) = cli.command else { panic!() };
        assert_eq!((a.verify, a.init), (VerifyArg::Planar, InitArg::SingleSeed));
    }

    #[test]
    fn rejects_bad_flags() {
        assert!(parse(&["run"]).is_err());
        assert!(parse(&["run", "--input", "a.csv", "--generate", "cube"]).is_err());
        assert!(parse(&["run", "--generate", "torus", "--n", "3", "--m", "2"]).is_err());
    }

    #[test]
    fn order_file_labels() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("order.txt");
        std::fs::write(&path, "8, 7\n6\n").unwrap();
        assert_eq!(read_order_file(&path, 9).unwrap(), vec![PointId(7), PointId(6), PointId(5)]);
        std::fs::write(&path, "8\n10\n").unwrap();
        assert!(matches!(read_order_file(&path, 9), Err(Error::Parse { line: 2, .. })));
        std::fs::write(&path, "0").unwrap();
        assert!(read_order_file(&path, 9).is_err());
    }
}
