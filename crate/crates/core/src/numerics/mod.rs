//! Shared numerical kernels.

mod interval;
mod linalg;
mod normal;
mod rng;

pub use interval::ExtendedInterval;
pub use linalg::{inverse_checked, norm_1, solve_dense, MAX_CONDITION};
pub use normal::{
    log_gauss_mass, log_normal_cdf, normal_cdf, normal_pdf, normal_quantile, normal_sf, sqrt_two_pi,
};
pub use rng::stream_rng;
