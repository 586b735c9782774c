use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use wassci::harness::{NoiseFamily, VarianceMode};

#[derive(Debug, Parser)]
#[command(
    name = "wassci",
    version,
    about = "Selective confidence intervals for the l1 Wasserstein distance between two samples"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance and confidence intervals for two sample files.
    Ci(CiArgs),
    /// Coverage of selective and naive intervals over a sweep of mean shifts.
    SimulateCoverage(SimArgs),
    /// Interval lengths over a sweep of mean shifts.
    SimulateLength(SimArgs),
    /// Wall time of full runs at n = m for each size.
    Benchmark(BenchArgs),
    /// Coverage under non-Gaussian noise and estimated variance.
    Robustness(RobustArgs),
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if a > 0.0 && a < 1.0 {
        Ok(a)
    } else {
        Err(format!("alpha must lie in (0, 1), got {a}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {v}"))
    }
}

fn parse_noise(s: &str) -> Result<NoiseFamily, String> {
    s.parse().map_err(|e: wassci::Error| e.to_string())
}

fn parse_variance(s: &str) -> Result<VarianceMode, String> {
    s.parse().map_err(|e: wassci::Error| e.to_string())
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Args)]
pub struct CiArgs {
    /// CSV file of the first sample, one point per line.
    #[arg(long)]
    pub x: PathBuf,
    /// CSV file of the second sample.
    #[arg(long)]
    pub y: PathBuf,
    #[arg(long, default_value = "0.05", value_parser = parse_alpha)]
    pub alpha: f64,
    /// Known noise standard deviation.
    #[arg(long, value_parser = parse_positive, conflicts_with = "estimate_sigma")]
    pub sigma: Option<f64>,
    /// Use the pooled within-sample variance instead of a known sigma.
    #[arg(long)]
    pub estimate_sigma: bool,
    /// Skip the first line of each sample file.
    #[arg(long)]
    pub header: bool,
    /// Continue past a degenerate optimal vertex, with a warning.
    #[arg(long)]
    pub allow_degenerate: bool,
    /// Full covariance of the stacked first sample, (n d)^2 numbers row-major.
    #[arg(long)]
    pub cov_x: Option<PathBuf>,
    #[arg(long)]
    pub cov_y: Option<PathBuf>,
    /// Keep a random subset of this many rows of the first sample.
    #[arg(long)]
    pub subsample_n: Option<usize>,
    #[arg(long)]
    pub subsample_m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub subsample_seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the LP (sizes, costs, 1-based optimal basis) as plain text.
    #[arg(long)]
    pub dump_lp: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Mean shifts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
    pub delta: Vec<f64>,
    #[arg(long, default_value = "gaussian", value_parser = parse_noise)]
    pub noise: NoiseFamily,
    /// known or estimated.
    #[arg(long, default_value = "known", value_parser = parse_variance)]
    pub variance: VarianceMode,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value = "0.05", value_parser = parse_alpha)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = default_jobs())]
    pub jobs: usize,
    /// Drop trials whose optimal vertex is degenerate instead of running them.
    #[arg(long)]
    pub exclude_degenerate: bool,
    /// Aggregate JSON; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-trial CSV. With several shifts, one file per shift is written
    /// with a `_delta<value>` suffix.
    #[arg(long)]
    pub trials_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Sample sizes n = m, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "50,60,70,80")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 2.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value = "0.05", value_parser = parse_alpha)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RobustArgs {
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 2.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value = "0.05", value_parser = parse_alpha)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = default_jobs())]
    pub jobs: usize,
    #[arg(long)]
    pub exclude_degenerate: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
