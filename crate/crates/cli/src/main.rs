mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spectral_frechet::rng::DEFAULT_SEED;
use spectral_frechet::Error;

#[derive(Parser, Debug)]
#[command(name = "spectral-frechet", version, about = "Fréchet means and regression of graphs under adjacency spectral distances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a set of random graphs into a directory.
    Generate(GenerateArgs),
    /// Count eigenvalues outside the semicircle bulk of a sample's mean spectrum.
    EstimateC(EstimateArgs),
    /// Approximate the sample Fréchet mean of a directory of graphs.
    Mean(MeanArgs),
    /// Fréchet regression of graphs on a scalar covariate.
    Regress(RegressArgs),
    /// Print the adjacency spectrum of one graph file.
    Spectrum(SpectrumArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ensemble {
    Sbm,
    Ba,
    Ws,
    Er,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub ensemble: Ensemble,
    /// Vertices per graph.
    #[arg(long)]
    pub n: usize,
    /// Number of graphs.
    #[arg(long = "N", visible_alias = "count")]
    pub count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED.0)]
    pub seed: u64,
    #[arg(long, default_value = "sample")]
    pub out: PathBuf,
    /// Edge probability (er).
    #[arg(long)]
    pub p: Option<f64>,
    /// Seed clique size (ba).
    #[arg(long)]
    pub m0: Option<usize>,
    /// Edges per new vertex (ba).
    #[arg(long)]
    pub m: Option<usize>,
    /// Ring degree (ws).
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Rewiring probability (ws).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Kernel document (sbm); alternative to the inline block flags.
    #[arg(long)]
    pub kernel: Option<PathBuf>,
    /// Overall density scale (sbm).
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// Community sizes, comma separated (sbm).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<f64>,
    /// Within-community densities, comma separated (sbm).
    #[arg(long = "within", value_delimiter = ',')]
    pub within: Vec<f64>,
    /// Shared cross-community density (sbm).
    #[arg(long)]
    pub cross: Option<f64>,
    /// Per-community slope of the within densities in a covariate t ~ U(0, 1) (sbm);
    /// also writes `covariates.csv`.
    #[arg(long = "within-slope", value_delimiter = ',')]
    pub within_slope: Vec<f64>,
    /// Slope of the cross density in t (sbm, with --within-slope).
    #[arg(long = "cross-slope", default_value_t = 0.0)]
    pub cross_slope: f64,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    /// Directory of g_<k>.txt files.
    pub dir: PathBuf,
    #[arg(long = "k-bulk", default_value_t = spectral_frechet::bulk::DEFAULT_K_BULK)]
    pub k_bulk: usize,
    /// Write the per-step diagnostics as CSV here.
    #[arg(long)]
    pub diagnostics: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct FitArgs {
    #[arg(long = "k-bulk", default_value_t = spectral_frechet::bulk::DEFAULT_K_BULK)]
    pub k_bulk: usize,
    /// Number of extreme eigenvalues; estimated when omitted.
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long = "n-tilde", default_value_t = 5)]
    pub n_tilde: usize,
    #[arg(long, default_value_t = DEFAULT_SEED.0)]
    pub seed: u64,
    #[arg(long = "max-iters", default_value_t = 500)]
    pub max_iters: usize,
    /// Relative-change tolerance of the kernel fit.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct MeanArgs {
    pub dir: PathBuf,
    #[command(flatten)]
    pub fit: FitArgs,
    #[arg(long, default_value = "mean")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RegressArgs {
    pub dir: PathBuf,
    /// CSV with columns filename,t; defaults to <dir>/covariates.csv.
    #[arg(long)]
    pub covariates: Option<PathBuf>,
    /// Query points (repeatable); defaults to 0, 0.2, ..., 1.
    #[arg(long = "t")]
    pub t: Vec<f64>,
    #[command(flatten)]
    pub fit: FitArgs,
    #[arg(long, default_value = "regression")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    pub graph: PathBuf,
    /// Keep only the c largest eigenvalues.
    #[arg(long)]
    pub c: Option<usize>,
    /// Write eigenvalue histogram bin counts as CSV here.
    #[arg(long)]
    pub histogram: Option<PathBuf>,
    #[arg(long, default_value_t = 40)]
    pub bins: usize,
}

/// Failure with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Failure { code: 3, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::InvalidKernel(_) | Error::Precondition(_) => 2,
            Error::Parse { .. } | Error::Document(_) | Error::Io(_) => 3,
            Error::Numeric(_) | Error::Infeasible(_) => 4,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::data(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::data(e.to_string())
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SPECTRAL_FRECHET_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("SPECTRAL_FRECHET_THREADS={raw} is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Generate(a) => commands::generate(&a),
        Command::EstimateC(a) => commands::estimate(&a),
        Command::Mean(a) => commands::mean(&a),
        Command::Regress(a) => commands::regress(&a),
        Command::Spectrum(a) => commands::spectrum(&a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
