mod commands;
mod format;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "monoconv", version, about = "Error bounds and brute-force checks for monomial convexification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Grid resolution per coordinate for oracle runs.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Tolerance for TIGHT verdicts.
    #[arg(long, global = true, default_value_t = 1e-4)]
    pub tol: f64,
    /// Write output here instead of stdout (a file prefix for svg).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    Unit,
    Subbox,
    Ratio,
    Sym,
    Simplex,
    Corner,
    Complement,
}

#[derive(Args, Debug, Clone)]
pub struct DomainArgs {
    #[arg(long, value_enum, default_value = "unit")]
    pub domain: DomainKind,
    /// Ratio-box upper end `r`.
    #[arg(long)]
    pub r: Option<f64>,
    /// Sub-box lower corner.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lower: Option<Vec<f64>>,
    /// Sub-box upper corner.
    #[arg(long, value_delimiter = ',')]
    pub upper: Option<Vec<f64>>,
    /// Corner-simplex edge lengths.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<f64>>,
}

#[derive(Args, Debug, Clone)]
pub struct MonomialArgs {
    /// Exponent vector, e.g. 2,1,1.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<u32>>,
    /// Dimension of the multilinear monomial when no exponents are given.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    Unitbox,
    Ratiobox,
    Symbox,
    Simplex,
    Integrality,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form bounds and where they are attained.
    Bounds {
        #[command(flatten)]
        mono: MonomialArgs,
        #[command(flatten)]
        dom: DomainArgs,
    },
    /// Compare closed forms against the brute-force oracle.
    Verify {
        #[arg(long, value_enum)]
        case: Case,
        #[command(flatten)]
        mono: MonomialArgs,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// D, E and their ratios over [1,r]^n.
    Figure1 {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "1.01,1.2,1.5,2,3,5,10")]
        r: Vec<f64>,
    },
    /// Export the facets of the symmetric-box hull.
    Facets {
        #[arg(long)]
        n: usize,
    },
    /// Gap bounds for a polynomial read from a file.
    Gap {
        /// Text (`coeff e1 ... en` per line) or JSON file.
        #[arg(long)]
        poly: PathBuf,
        /// Also measure the gap on the unit box (n ≤ 4, multilinear).
        #[arg(long)]
        certify: bool,
    },
    /// Best intercept of an affine underestimator.
    Sigma {
        #[command(flatten)]
        mono: MonomialArgs,
        #[arg(long, value_delimiter = ',')]
        beta: Vec<f64>,
        #[command(flatten)]
        dom: DomainArgs,
    },
    /// Root of (1−σ)^λ1 + λ2·σ − 1 in (0, 1].
    Root {
        #[arg(long)]
        lambda1: u32,
        #[arg(long)]
        lambda2: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
