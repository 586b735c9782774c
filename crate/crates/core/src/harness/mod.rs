//! Synthetic experiments: data generation, coverage, length, timing and
//! robustness sweeps, plus CSV input and output.

mod config;
mod experiment;
mod generate;
mod io;
mod noise;
mod output;
pub mod stats;

pub use config::{ExperimentConfig, NoiseFamily, VarianceMode};
pub use experiment::{
    run_coverage_experiment, run_length_experiment, run_robustness_experiment, run_sweep,
    run_timing_experiment, run_trial, Aggregate, ExperimentReport, RobustnessRow, SweepPoint,
    SweepReport, TimingRow, TrialRecord, TRIAL_TIMEOUT,
};
pub use generate::{generate_instance, pooled_variance, SyntheticInstance};
pub use io::{
    load_two_sample_csv, parse_numeric_csv, read_covariance, write_trials_csv, LoadOptions,
    SigmaMode, Subsample,
};
pub use noise::{skew_normal_moments, NoiseSampler, SKEW_SHAPE, T_DF};
pub use output::{robustness_json, sweep_json, timing_json};
