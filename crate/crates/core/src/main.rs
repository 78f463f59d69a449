use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fuzzydepth::io::{load_dataset, load_report, write_dataset, write_report_to, DataError, ReportFormat};
use fuzzydepth::{
    rank_with_queries, render_svg, sample_median, simulate_sample, verify, DepthError, Functional, PairScheme,
    PlotOptions, Role, SimConfig,
};

const SEED_VAR: &str = "FUZZYDEPTH_SEED";

#[derive(Parser)]
#[command(name = "fuzzydepth", version, about = "Simplicial depths for trapezoidal fuzzy data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pairs {
    Strict,
    WithDiagonal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionalArg {
    Naive,
    Modified,
    Simplicial,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of every row against the sample rows, with ranks.
    Depth {
        /// Dataset CSV, or `-` for stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value = "strict")]
        pairs: Pairs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Coordinate-wise median trapezoid of the sample rows.
    Median { input: PathBuf },
    /// Simulate a trapezoidal sample.
    Simulate {
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Falls back to $FUZZYDEPTH_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10.0)]
        sigma: f64,
        #[arg(long, default_value_t = 1)]
        dof: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plot the sample coloured by depth.
    Plot {
        input: PathBuf,
        /// Report written by `depth`.
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value_t = 5)]
        top: usize,
        #[arg(long, default_value_t = 0)]
        bottom: usize,
        #[arg(long)]
        median: bool,
        #[arg(long, value_enum, default_value = "modified")]
        functional: FunctionalArg,
        #[arg(long)]
        title: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in self checks.
    Verify {
        #[arg(long, default_value_t = 20_000)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Data(String),
    Verify,
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<DepthError> for Failure {
    fn from(e: DepthError) -> Self {
        match e {
            DepthError::Config(m) => Failure::Usage(m),
            other => Failure::Data(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn resolve_seed(seed: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{SEED_VAR}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn dataset(path: &Path) -> Result<fuzzydepth::Dataset, Failure> {
    load_dataset(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Depth {
            input,
            pairs,
            out,
            format,
        } => {
            let ds = dataset(&input)?;
            let scheme = match pairs {
                Pairs::Strict => PairScheme::Strict,
                Pairs::WithDiagonal => PairScheme::WithDiagonal,
            };
            let report = rank_with_queries(&ds.sample, &ds.query_numbers(), scheme)?;
            let format = match format {
                Format::Csv => ReportFormat::Csv,
                Format::Json => ReportFormat::Json,
            };
            let mut w = output(out.as_deref())?;
            write_report_to(&report, &mut w, format)?;
            w.flush()?;
        }
        Command::Median { input } => {
            let ds = dataset(&input)?;
            let m = sample_median(&ds.sample)?;
            let mut w = output(None)?;
            writeln!(w, "a,b,c,d")?;
            writeln!(
                w,
                "{},{},{},{}",
                fuzzydepth::io::fmt_sig12(m.a),
                fuzzydepth::io::fmt_sig12(m.b),
                fuzzydepth::io::fmt_sig12(m.c),
                fuzzydepth::io::fmt_sig12(m.d)
            )?;
            w.flush()?;
        }
        Command::Simulate {
            n,
            seed,
            sigma,
            dof,
            out,
        } => {
            let cfg = SimConfig {
                n,
                seed: resolve_seed(seed)?,
                sigma,
                dof,
            };
            let sample = simulate_sample(&cfg)?;
            let mut w = output(out.as_deref())?;
            write_dataset(&sample, &mut w)?;
            w.flush()?;
        }
        Command::Plot {
            input,
            report,
            top,
            bottom,
            median,
            functional,
            title,
            out,
        } => {
            let ds = dataset(&input)?;
            let records: Vec<_> = load_report(&report)
                .map_err(|e| Failure::Data(format!("{}: {e}", report.display())))?
                .into_iter()
                .filter(|r| r.role == Role::Sample)
                .collect();
            if records.len() != ds.sample.len() {
                return Err(Failure::Data(format!(
                    "report has {} sample rows but the dataset has {}",
                    records.len(),
                    ds.sample.len()
                )));
            }
            let functional = match functional {
                FunctionalArg::Naive => Functional::Naive,
                FunctionalArg::Modified => Functional::Modified,
                FunctionalArg::Simplicial => Functional::Simplicial,
            };
            let depths: Vec<f64> = records.iter().map(|r| functional.of(&r.depths())).collect();
            let med = if median {
                Some(sample_median(&ds.sample)?.to_fuzzy())
            } else {
                None
            };
            let opts = PlotOptions {
                top_k: top,
                bottom_k: bottom,
                highlight_median: median,
                functional,
                title,
                ..PlotOptions::default()
            };
            let svg = render_svg(ds.sample.items(), &depths, med.as_ref(), &opts)?;
            std::fs::write(&out, svg)?;
        }
        Command::Verify { trials, seed } => {
            if trials == 0 {
                return Err(Failure::Usage("--trials must be positive".into()));
            }
            let results = verify::run_suite(trials, resolve_seed(seed)?)?;
            let mut w = output(None)?;
            for r in &results {
                writeln!(w, "{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail)?;
            }
            w.flush()?;
            if results.iter().any(|r| !r.passed) {
                return Err(Failure::Verify);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Data(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verify) => ExitCode::from(3),
    }
}
