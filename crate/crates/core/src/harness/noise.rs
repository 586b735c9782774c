//! Unit-variance noise draws.

use rand::Rng;
use rand_distr::{Distribution, Exp1, SkewNormal, StandardNormal, StudentT};

use super::config::NoiseFamily;

pub const SKEW_SHAPE: f64 = 10.0;
pub const T_DF: f64 = 20.0;

/// Mean and standard deviation of the standard skew-normal with shape `a`.
pub fn skew_normal_moments(a: f64) -> (f64, f64) {
    let delta = a / (1.0 + a * a).sqrt();
    let mean = delta * (2.0 / std::f64::consts::PI).sqrt();
    (mean, (1.0 - mean * mean).sqrt())
}

/// Sampler for one family; holds the distribution objects so that repeated
/// draws do not rebuild them.
#[derive(Debug, Clone)]
pub struct NoiseSampler {
    family: NoiseFamily,
    skew: SkewNormal<f64>,
    skew_mean: f64,
    skew_sd: f64,
    t: StudentT<f64>,
}

impl NoiseSampler {
    pub fn new(family: NoiseFamily) -> Self {
        let (skew_mean, skew_sd) = skew_normal_moments(SKEW_SHAPE);
        Self {
            family,
            skew: SkewNormal::new(0.0, 1.0, SKEW_SHAPE).expect("valid skew-normal"),
            skew_mean,
            skew_sd,
            t: StudentT::new(T_DF).expect("valid t"),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.family {
            NoiseFamily::Gaussian => StandardNormal.sample(rng),
            NoiseFamily::Laplace => {
                // Laplace(0, 1/sqrt 2) as a difference of unit exponentials
                let a: f64 = Exp1.sample(rng);
                let b: f64 = Exp1.sample(rng);
                (a - b) * std::f64::consts::FRAC_1_SQRT_2
            }
            NoiseFamily::SkewNormal => (self.skew.sample(rng) - self.skew_mean) / self.skew_sd,
            NoiseFamily::StudentT => self.t.sample(rng) * ((T_DF - 2.0) / T_DF).sqrt(),
        }
    }
}
