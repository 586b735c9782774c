//! Conditional inference along the line through the observation: the
//! statistic, its truncation region, the truncated-normal pivot and the
//! resulting intervals.

mod ci;
mod line;
mod pipeline;
mod pivot;
mod region;
mod report;

pub use ci::{
    naive_ci, pivot_root, selective_ci, selective_ci_with, CiKind, CiOptions, ConfidenceInterval,
};
pub use line::{build_eta, nuisance_line, nuisance_line_for, SelectionLine, MIN_SIGMA2};
pub use pipeline::{
    run_algorithm_1, run_algorithm_1_with, AlgorithmOutput, PipelineOptions, POINT_REGION_TOL,
};
pub use pivot::truncated_normal_cdf;
pub use region::{
    compute_z1, compute_z2, truncation_region, TruncationRegion, MEMBERSHIP_SLACK, SLOPE_TOL,
};
pub use report::{RegionRecord, RunReport, SCHEMA_VERSION};
