use nalgebra::DMatrix;

use super::config::{ExperimentConfig, VarianceMode};
use super::noise::NoiseSampler;
use crate::error::{Error, Result};
use crate::model::ProblemInstance;
use crate::numerics::stream_rng;

/// A simulated dataset together with its noiseless means.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticInstance {
    pub instance: ProblemInstance,
    /// Row-major `(vec mu_X, vec mu_Y)`.
    pub means: Vec<f64>,
}

/// Trial `trial_index` of `cfg`: `X = 1 + e_X` and `Y = 1 + delta + e_Y`
/// entrywise, noise drawn from the stream `(cfg.seed, trial_index)` in
/// row-major order, X before Y.
pub fn generate_instance(cfg: &ExperimentConfig, trial_index: u64) -> Result<SyntheticInstance> {
    let (n, m, d) = (cfg.n, cfg.m, cfg.d);
    let sampler = NoiseSampler::new(cfg.noise);
    let mut rng = stream_rng(cfg.seed, trial_index);
    let mut means = vec![1.0; n * d];
    means.extend(std::iter::repeat_n(1.0 + cfg.delta, m * d));
    let data: Vec<f64> = means
        .iter()
        .map(|mu| mu + sampler.sample(&mut rng))
        .collect();
    let x = DMatrix::from_row_slice(n, d, &data[..n * d]);
    let y = DMatrix::from_row_slice(m, d, &data[n * d..]);
    let variance = match cfg.variance_mode {
        VarianceMode::Known => 1.0,
        VarianceMode::Estimated => pooled_variance(&x, &y)?,
    };
    Ok(SyntheticInstance {
        instance: ProblemInstance::isotropic(x, y, variance)?,
        means,
    })
}

/// Pooled variance of the residuals about each sample's coordinate means,
/// with `(n + m - 2) d` degrees of freedom.
pub fn pooled_variance(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<f64> {
    let d = x.ncols();
    let dof = (x.nrows() + y.nrows()) as f64 * d as f64 - 2.0 * d as f64;
    if dof <= 0.0 {
        return Err(Error::InvalidInstance(
            "too few points to estimate a variance".into(),
        ));
    }
    let mut ss = 0.0;
    for rows in [x, y] {
        for k in 0..d {
            let col = rows.column(k);
            let mean = col.mean();
            ss += col.iter().map(|v| (v - mean).powi(2)).sum::<f64>();
        }
    }
    let var = ss / dof;
    if !(var > 0.0) {
        return Err(Error::InvalidInstance("estimated variance is zero".into()));
    }
    Ok(var)
}
