use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Noise distribution, always standardized to mean 0 and variance 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseFamily {
    Gaussian,
    Laplace,
    /// Skew-normal with shape 10.
    SkewNormal,
    /// Student t with 20 degrees of freedom.
    StudentT,
}

impl NoiseFamily {
    pub const ALL: [NoiseFamily; 4] = [
        NoiseFamily::Gaussian,
        NoiseFamily::Laplace,
        NoiseFamily::SkewNormal,
        NoiseFamily::StudentT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NoiseFamily::Gaussian => "gaussian",
            NoiseFamily::Laplace => "laplace",
            NoiseFamily::SkewNormal => "skew_normal",
            NoiseFamily::StudentT => "student_t",
        }
    }
}

impl fmt::Display for NoiseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoiseFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "gaussian" | "normal" => Ok(NoiseFamily::Gaussian),
            "laplace" => Ok(NoiseFamily::Laplace),
            "skew_normal" | "skewnormal" => Ok(NoiseFamily::SkewNormal),
            "student_t" | "t" | "t20" => Ok(NoiseFamily::StudentT),
            _ => Err(Error::Domain(format!(
                "unknown noise family '{s}' (expected gaussian, laplace, skew_normal or student_t)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceMode {
    /// Unit variance, as generated.
    Known,
    /// Pooled within-sample variance estimated from each dataset.
    Estimated,
}

impl FromStr for VarianceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "known" => Ok(VarianceMode::Known),
            "estimated" => Ok(VarianceMode::Estimated),
            _ => Err(Error::Domain(format!(
                "unknown variance mode '{s}' (expected known or estimated)"
            ))),
        }
    }
}

fn default_parallelism() -> usize {
    1
}

fn default_true() -> bool {
    true
}

/// One synthetic experiment cell. `parallelism` is not serialized, so
/// reports do not depend on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub delta: f64,
    pub noise: NoiseFamily,
    pub variance_mode: VarianceMode,
    pub trials: usize,
    pub alpha: f64,
    pub seed: u64,
    #[serde(skip_serializing, default = "default_parallelism")]
    pub parallelism: usize,
    /// Run degenerate vertices through the plan-based region instead of
    /// excluding them.
    #[serde(default = "default_true")]
    pub allow_degenerate: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 5,
            m: 5,
            d: 1,
            delta: 2.0,
            noise: NoiseFamily::Gaussian,
            variance_mode: VarianceMode::Known,
            trials: 1000,
            alpha: 0.05,
            seed: 0,
            parallelism: 1,
            allow_degenerate: true,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 || self.d == 0 {
            return Err(Error::Domain("n, m and d must be positive".into()));
        }
        if self.trials == 0 {
            return Err(Error::Domain("trials must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Domain(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if !self.delta.is_finite() {
            return Err(Error::Domain("delta must be finite".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::Domain("parallelism must be at least 1".into()));
        }
        if self.variance_mode == VarianceMode::Estimated && self.n + self.m < 3 {
            return Err(Error::Domain(
                "variance estimation needs at least three points".into(),
            ));
        }
        Ok(())
    }
}
