//! Selective confidence intervals for the Wasserstein distance between two
//! noisy samples.
//!
//! The distance is the optimum of a transport LP over the pairwise l1
//! costs. Conditioning on the observed sign pattern of the pairwise
//! differences and on the optimal plan restricts the statistic to an
//! interval of a line through the data, where it is a truncated Gaussian;
//! inverting that pivot gives an interval with exact conditional coverage.
//!
//! ```
//! use wassci::{run_algorithm_1, ProblemInstance};
//!
//! let inst = ProblemInstance::from_1d(&[1.0, 4.0], &[0.0, 2.0, 5.0], 1.0).unwrap();
//! let out = run_algorithm_1(&inst, 0.05).unwrap();
//! assert!((out.distance - 7.0 / 6.0).abs() < 1e-12);
//! assert!(out.selective_ci.lo <= out.distance && out.distance <= out.selective_ci.hi);
//! ```

// `!(x > 0.0)` style checks are used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod lp;
pub mod model;
pub mod numerics;
pub mod selective;
mod serde_ext;

pub use error::{Error, Result};
pub use lp::{solve_transport, LpOptions};
pub use model::{
    build_cost_decomposition, build_transport_problem, CostDecomposition, Covariance, LpSolution,
    ProblemInstance, TransportProblem,
};
pub use numerics::ExtendedInterval;
pub use selective::{
    run_algorithm_1, run_algorithm_1_with, AlgorithmOutput, ConfidenceInterval, PipelineOptions,
    RunReport, SelectionLine, TruncationRegion,
};
