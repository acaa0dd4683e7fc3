mod report;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use isoprofile::comparison::{verify_theorem_1_1_with, ComparisonConfig};
use isoprofile::constants::EPS_DEFAULT;
use isoprofile::figures::{figure, Curve};
use isoprofile::radial::{parse_functions, write_functions, RadialTestFunction};
use isoprofile::yamabe::{analyze_suite, bound_constants, random_test_functions, suite_certificate, SYMMETRIZE_TOL};

/// Smallest accepted grid density.
pub const MIN_GRID: usize = 100;
const DEFAULT_PROFILE_POINTS: usize = 1000;
const DEFAULT_SEED: u64 = 2024;
const DEFAULT_COUNT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Kv,
}

#[derive(Debug, Parser)]
#[command(name = "isoprofile", version, about = "Isoperimetric profile comparisons and Yamabe bound certificates")]
struct Cli {
    /// Tuning constant of the comparison sphere
    #[arg(long, global = true, default_value_t = EPS_DEFAULT)]
    eps: f64,
    /// Grid density (points per dominance check or per plotted curve)
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Symmetrization refinement tolerance
    #[arg(long, global = true, default_value_t = SYMMETRIZE_TOL)]
    tol: f64,
    /// Output directory for reports, CSV and SVG files
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every certificate and write the master report
    Verify {
        /// Test-function file for the Yamabe suite (default: seeded random functions)
        #[arg(long)]
        functions: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
    },
    /// Write CSV samples and an SVG plot of a profile or comparison figure
    Profile {
        /// s2xR, s3_3xR, s3_3, s4, morgan, figure1a, figure1b, figure1c, figure2, figure3a or figure3b
        which: String,
    },
    /// Print the constants of the Yamabe bound
    Constants,
    /// Symmetrize test functions and check the Yamabe comparison chain
    Symmetrize {
        /// Test-function file (default: seeded random functions, saved to the output directory)
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
    },
}

/// Validated run settings shared by the subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub eps: f64,
    pub grid: Option<usize>,
    pub tol: f64,
    pub out: PathBuf,
    pub format: Format,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self, String> {
        if !(cli.eps > 0.0 && cli.eps.is_finite()) {
            return Err(format!("--eps must be positive and finite, got {}", cli.eps));
        }
        if let Some(g) = cli.grid {
            if g < MIN_GRID {
                return Err(format!("--grid must be at least {MIN_GRID}, got {g}"));
            }
        }
        if !(cli.tol > 0.0 && cli.tol.is_finite()) {
            return Err(format!("--tol must be positive, got {}", cli.tol));
        }
        Ok(Self {
            eps: cli.eps,
            grid: cli.grid,
            tol: cli.tol,
            out: cli.out.clone(),
            format: cli.format,
        })
    }

    fn comparison(&self) -> ComparisonConfig {
        let c = ComparisonConfig::new(self.eps);
        match self.grid {
            Some(g) => c.with_grid(g),
            None => c,
        }
    }

    fn write(&self, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
        fs::create_dir_all(&self.out).with_context(|| format!("creating {}", self.out.display()))?;
        let path = self.out.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}

enum Failure {
    Config(String),
    Certificate,
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<isoprofile::Error> for Failure {
    fn from(e: isoprofile::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

fn load_functions(path: &Path) -> Result<Vec<RadialTestFunction>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("reading {}: {e}", path.display())))?;
    let fs = parse_functions(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    if fs.is_empty() {
        return Err(Failure::Config(format!("{}: no test functions", path.display())));
    }
    Ok(fs)
}

fn test_functions(cfg: &RunConfig, file: Option<&Path>, seed: u64, count: usize) -> Result<Vec<RadialTestFunction>, Failure> {
    match file {
        Some(p) => load_functions(p),
        None if count == 0 => Err(Failure::Config("--count must be positive".into())),
        None => {
            let fs = random_test_functions(seed, count);
            cfg.write("functions.txt", &write_functions(&fs))?;
            Ok(fs)
        }
    }
}

fn cmd_verify(cfg: &RunConfig, file: Option<&Path>, seed: u64, count: usize) -> Result<(), Failure> {
    let functions = test_functions(cfg, file, seed, count)?;
    let comparison = verify_theorem_1_1_with(&cfg.comparison())?;
    let suite = suite_certificate(&analyze_suite(&functions, cfg.eps, cfg.tol)?);
    let constants = bound_constants(cfg.eps)?.certificate();
    let master = report::master(cfg.eps, vec![comparison, suite, constants]);
    let (name, text) = match cfg.format {
        Format::Human => ("report.txt", report::human(&master, cfg)),
        Format::Kv => ("report.kv", report::kv(&master, cfg)),
    };
    let path = cfg.write(name, &text)?;
    print!("{text}");
    eprintln!("report written to {}", path.display());
    if master.pass {
        Ok(())
    } else {
        Err(Failure::Certificate)
    }
}

fn cmd_profile(cfg: &RunConfig, which: &str) -> Result<(), Failure> {
    let curve: Curve = which.parse().map_err(|e: isoprofile::Error| Failure::Config(e.to_string()))?;
    let fig = figure(curve, cfg.eps, cfg.grid.unwrap_or(DEFAULT_PROFILE_POINTS))?;
    let csv = cfg.write(&format!("{}.csv", fig.name), &fig.to_csv())?;
    let svg = cfg.write(&format!("{}.svg", fig.name), &svg::render(&fig))?;
    let min = fig.min_margin();
    match cfg.format {
        Format::Human => {
            println!("{}", fig.title);
            println!("wrote {}", csv.display());
            println!("wrote {}", svg.display());
            if let Some((m, at)) = min {
                println!("minimum margin {m:.6e} at volume {at:.6}");
            }
        }
        Format::Kv => {
            println!("curve={}", fig.name);
            println!("points={}", fig.volumes.len());
            println!("csv={}", csv.display());
            println!("svg={}", svg.display());
            if let Some((m, at)) = min {
                println!("min_margin={m:.17e}");
                println!("min_margin_at={at:.17e}");
            }
        }
    }
    Ok(())
}

fn cmd_constants(cfg: &RunConfig) -> Result<(), Failure> {
    let b = bound_constants(cfg.eps)?;
    print!("{}", report::constants(&b, cfg.format));
    Ok(())
}

fn cmd_symmetrize(cfg: &RunConfig, file: Option<&Path>, seed: u64, count: usize) -> Result<(), Failure> {
    let functions = test_functions(cfg, file, seed, count)?;
    let analyses = analyze_suite(&functions, cfg.eps, cfg.tol)?;
    let cert = suite_certificate(&analyses);
    cfg.write("symmetrized.txt", &report::symmetrized(&analyses))?;
    let text = report::symmetrize_summary(&analyses, &cert, cfg.format);
    cfg.write(
        match cfg.format {
            Format::Human => "symmetrize.txt",
            Format::Kv => "symmetrize.kv",
        },
        &text,
    )?;
    print!("{text}");
    if cert.pass {
        Ok(())
    } else {
        Err(Failure::Certificate)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = RunConfig::from_cli(&cli).map_err(Failure::Config)?;
    match &cli.command {
        Command::Verify { functions, seed, count } => cmd_verify(&cfg, functions.as_deref(), *seed, *count),
        Command::Profile { which } => cmd_profile(&cfg, which),
        Command::Constants => cmd_constants(&cfg),
        Command::Symmetrize { file, seed, count } => cmd_symmetrize(&cfg, file.as_deref(), *seed, *count),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Certificate) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
