use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, NoiseFamily, VarianceMode};
use super::generate::generate_instance;
use super::stats::{median, spearman, wilson_interval};
use crate::error::{Error, Result};
use crate::selective::{run_algorithm_1_with, truncated_normal_cdf, PipelineOptions};

/// Normal quantile for the 95% binomial band.
const BAND_Z: f64 = 1.959_963_984_540_054;
/// Timing runs slower than this count as failures.
pub const TRIAL_TIMEOUT: Duration = Duration::from_secs(300);

/// Outcome of one simulated dataset. Numeric fields are NaN when the trial
/// failed (`error` is set).
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: u64,
    pub z_obs: f64,
    pub distance: f64,
    /// `eta^T mu` with this trial's own `eta`.
    pub truth: f64,
    pub sel: [f64; 2],
    pub naive: [f64; 2],
    pub covered_sel: bool,
    pub covered_naive: bool,
    pub degenerate: bool,
    /// Truncated-normal pivot evaluated at `truth`.
    pub pivot: f64,
    pub wall_ms: f64,
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn sel_length(&self) -> f64 {
        self.sel[1] - self.sel[0]
    }
}

/// Runs one trial of `cfg`.
pub fn run_trial(cfg: &ExperimentConfig, trial: u64) -> TrialRecord {
    let start = Instant::now();
    let opts = PipelineOptions {
        allow_degenerate: cfg.allow_degenerate,
        ..Default::default()
    };
    let result = generate_instance(cfg, trial)
        .and_then(|g| run_algorithm_1_with(&g.instance, cfg.alpha, &opts).map(|o| (g, o)));
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok((g, out)) => {
            let truth = out.project(&g.means);
            let pivot = truncated_normal_cdf(out.line.z_obs, truth, out.line.sigma2, &out.region.z)
                .unwrap_or(f64::NAN);
            TrialRecord {
                trial,
                z_obs: out.line.z_obs,
                distance: out.distance,
                truth,
                sel: out.selective_ci.as_pair(),
                naive: out.naive_ci.as_pair(),
                covered_sel: out.selective_ci.contains(truth),
                covered_naive: out.naive_ci.contains(truth),
                degenerate: out.degenerate,
                pivot,
                wall_ms,
                error: None,
            }
        }
        Err(e) => TrialRecord {
            trial,
            z_obs: f64::NAN,
            distance: f64::NAN,
            truth: f64::NAN,
            sel: [f64::NAN; 2],
            naive: [f64::NAN; 2],
            covered_sel: false,
            covered_naive: false,
            degenerate: matches!(e, Error::Degenerate { .. }),
            pivot: f64::NAN,
            wall_ms,
            error: Some(e.to_string()),
        },
    }
}

/// Summary over the trials of one configuration. Contains no timings, so
/// it is a pure function of the configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub trials: usize,
    /// Trials that produced intervals.
    pub evaluated: usize,
    /// Trials that failed (including refused degenerate vertices); left out
    /// of every rate below.
    pub excluded: usize,
    /// Trials whose optimal vertex was degenerate, evaluated or not.
    pub degenerate: usize,
    pub covered_selective: usize,
    pub coverage_selective: f64,
    pub coverage_selective_band: [f64; 2],
    pub covered_naive: usize,
    pub coverage_naive: f64,
    pub coverage_naive_band: [f64; 2],
    /// Mean over evaluated trials with a finite selective interval.
    pub mean_length_selective: f64,
    pub infinite_selective: usize,
    pub fraction_infinite_selective: f64,
    pub mean_length_naive: f64,
    /// First few distinct failure messages.
    pub errors: Vec<String>,
}

impl Aggregate {
    pub fn from_records(records: &[TrialRecord]) -> Self {
        let ok: Vec<&TrialRecord> = records.iter().filter(|r| r.ok()).collect();
        let evaluated = ok.len();
        let covered_selective = ok.iter().filter(|r| r.covered_sel).count();
        let covered_naive = ok.iter().filter(|r| r.covered_naive).count();
        let finite: Vec<f64> = ok
            .iter()
            .map(|r| r.sel_length())
            .filter(|l| l.is_finite())
            .collect();
        let infinite_selective = evaluated - finite.len();
        let rate = |k: usize| k as f64 / evaluated as f64;
        let mut errors: Vec<String> = Vec::new();
        for r in records {
            if let Some(e) = &r.error {
                if errors.len() < 5 && !errors.contains(e) {
                    errors.push(e.clone());
                }
            }
        }
        Self {
            trials: records.len(),
            evaluated,
            excluded: records.len() - evaluated,
            degenerate: records.iter().filter(|r| r.degenerate).count(),
            covered_selective,
            coverage_selective: rate(covered_selective),
            coverage_selective_band: wilson_interval(covered_selective, evaluated, BAND_Z),
            covered_naive,
            coverage_naive: rate(covered_naive),
            coverage_naive_band: wilson_interval(covered_naive, evaluated, BAND_Z),
            mean_length_selective: finite.iter().sum::<f64>() / finite.len() as f64,
            infinite_selective,
            fraction_infinite_selective: rate(infinite_selective),
            mean_length_naive: ok.iter().map(|r| r.naive[1] - r.naive[0]).sum::<f64>()
                / evaluated as f64,
            errors,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub aggregate: Aggregate,
}

fn pool(parallelism: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::NumericalFailure(format!("thread pool: {e}")))
}

/// All trials of `cfg`, in parallel; records come back in trial order.
pub fn run_coverage_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let records: Vec<TrialRecord> = pool(cfg.parallelism)?.install(|| {
        (0..cfg.trials as u64)
            .into_par_iter()
            .map(|t| run_trial(cfg, t))
            .collect()
    });
    let aggregate = Aggregate::from_records(&records);
    Ok(ExperimentReport {
        config: cfg.clone(),
        records,
        aggregate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub delta: f64,
    pub aggregate: Aggregate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub base: ExperimentConfig,
    pub reports: Vec<ExperimentReport>,
    /// Spearman correlation between delta and mean finite selective length.
    pub spearman_length: f64,
}

impl SweepReport {
    pub fn points(&self) -> Vec<SweepPoint> {
        self.reports
            .iter()
            .map(|r| SweepPoint {
                delta: r.config.delta,
                aggregate: r.aggregate.clone(),
            })
            .collect()
    }
}

/// One coverage experiment per shift in `deltas`, all with `base`'s seed.
pub fn run_sweep(base: &ExperimentConfig, deltas: &[f64]) -> Result<SweepReport> {
    if deltas.is_empty() {
        return Err(Error::Domain("empty delta list".into()));
    }
    let reports = deltas
        .iter()
        .map(|&delta| {
            run_coverage_experiment(&ExperimentConfig {
                delta,
                ..base.clone()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lengths: Vec<f64> = reports
        .iter()
        .map(|r| r.aggregate.mean_length_selective)
        .collect();
    let spearman_length = if deltas.len() > 1 {
        spearman(deltas, &lengths)
    } else {
        f64::NAN
    };
    Ok(SweepReport {
        base: base.clone(),
        reports,
        spearman_length,
    })
}

/// Length sweep: the same as [`run_sweep`]; the length trend is in
/// `spearman_length`.
pub fn run_length_experiment(base: &ExperimentConfig, deltas: &[f64]) -> Result<SweepReport> {
    run_sweep(base, deltas)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub trials: usize,
    pub completed: usize,
    pub failures: usize,
    pub median_ms: f64,
    pub max_ms: f64,
}

/// Sequential wall-clock timing of full runs at `n = m` for each size.
pub fn run_timing_experiment(base: &ExperimentConfig, sizes: &[usize]) -> Result<Vec<TimingRow>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let cfg = ExperimentConfig {
            n: size,
            m: size,
            ..base.clone()
        };
        cfg.validate()?;
        let records: Vec<TrialRecord> =
            (0..cfg.trials as u64).map(|t| run_trial(&cfg, t)).collect();
        let done: Vec<f64> = records
            .iter()
            .filter(|r| r.ok() && r.wall_ms <= TRIAL_TIMEOUT.as_secs_f64() * 1e3)
            .map(|r| r.wall_ms)
            .collect();
        rows.push(TimingRow {
            n: size,
            m: size,
            d: cfg.d,
            trials: cfg.trials,
            completed: done.len(),
            failures: cfg.trials - done.len(),
            median_ms: if done.is_empty() {
                f64::NAN
            } else {
                median(&done)
            },
            max_ms: done.iter().copied().fold(f64::NAN, f64::max),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessRow {
    pub label: String,
    pub noise: NoiseFamily,
    pub variance_mode: VarianceMode,
    pub aggregate: Aggregate,
}

/// Non-Gaussian noise with known variance, and Gaussian noise with
/// estimated variance, each at `base`'s shift and seed.
pub fn run_robustness_experiment(base: &ExperimentConfig) -> Result<Vec<RobustnessRow>> {
    let cells = [
        ("laplace", NoiseFamily::Laplace, VarianceMode::Known),
        ("skew_normal", NoiseFamily::SkewNormal, VarianceMode::Known),
        ("student_t", NoiseFamily::StudentT, VarianceMode::Known),
        (
            "estimated_variance",
            NoiseFamily::Gaussian,
            VarianceMode::Estimated,
        ),
    ];
    cells
        .iter()
        .map(|&(label, noise, variance_mode)| {
            let cfg = ExperimentConfig {
                noise,
                variance_mode,
                ..base.clone()
            };
            run_coverage_experiment(&cfg).map(|r| RobustnessRow {
                label: label.into(),
                noise,
                variance_mode,
                aggregate: r.aggregate,
            })
        })
        .collect()
}
