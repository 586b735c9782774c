use serde::{Deserialize, Serialize};

use super::pivot::truncated_normal_cdf;
use crate::error::{Error, Result};
use crate::numerics::{normal_quantile, ExtendedInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CiKind {
    Naive,
    Selective,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub lo: f64,
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub hi: f64,
    pub alpha: f64,
    pub kind: CiKind,
}

impl ConfidenceInterval {
    pub fn contains(&self, w: f64) -> bool {
        self.lo <= w && w <= self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn as_pair(&self) -> [f64; 2] {
        [self.lo, self.hi]
    }
}

/// Root-finding settings for the selective interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiOptions {
    /// Initial bracket half-width in units of sigma.
    pub bracket_sigmas: f64,
    /// Number of times the bracket is widened tenfold before giving up.
    pub widenings: u32,
    pub max_iterations: usize,
    /// Stop when `|F - target|` falls below this.
    pub f_tol: f64,
    /// Stop when the bracket is narrower than this many sigmas.
    pub w_tol: f64,
}

impl Default for CiOptions {
    fn default() -> Self {
        Self {
            bracket_sigmas: 50.0,
            widenings: 2,
            max_iterations: 200,
            f_tol: 1e-10,
            w_tol: 1e-10,
        }
    }
}

fn check_alpha(alpha: f64, allow_one: bool) -> Result<()> {
    let ok = alpha > 0.0 && (alpha < 1.0 || allow_one && alpha == 1.0);
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )))
    }
}

/// `z_obs ± q(1 - alpha/2) sigma`. `alpha = 1` gives the single point.
pub fn naive_ci(z_obs: f64, sigma2: f64, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha, true)?;
    if !(sigma2 > 0.0) {
        return Err(Error::Domain(format!(
            "sigma2 must be positive, got {sigma2}"
        )));
    }
    let half = normal_quantile(1.0 - alpha / 2.0)? * sigma2.sqrt();
    Ok(ConfidenceInterval {
        lo: z_obs - half,
        hi: z_obs + half,
        alpha,
        kind: CiKind::Naive,
    })
}

/// The set of means `w` whose truncated-normal pivot at `z_obs` lies in
/// `[alpha/2, 1 - alpha/2]`.
pub fn selective_ci(
    z_obs: f64,
    sigma2: f64,
    region: &ExtendedInterval,
    alpha: f64,
) -> Result<ConfidenceInterval> {
    selective_ci_with(z_obs, sigma2, region, alpha, &CiOptions::default())
}

pub fn selective_ci_with(
    z_obs: f64,
    sigma2: f64,
    region: &ExtendedInterval,
    alpha: f64,
    opts: &CiOptions,
) -> Result<ConfidenceInterval> {
    check_alpha(alpha, false)?;
    let hi = pivot_root(z_obs, sigma2, region, alpha / 2.0, opts)?;
    let lo = pivot_root(z_obs, sigma2, region, 1.0 - alpha / 2.0, opts)?;
    Ok(ConfidenceInterval {
        lo,
        hi: hi.max(lo),
        alpha,
        kind: CiKind::Selective,
    })
}

/// Solves `F_w(z_obs) = target` for `w` by bisection; the pivot decreases
/// in `w`.
pub fn pivot_root(
    z_obs: f64,
    sigma2: f64,
    region: &ExtendedInterval,
    target: f64,
    opts: &CiOptions,
) -> Result<f64> {
    let sigma = sigma2.sqrt();
    let f = |w: f64| truncated_normal_cdf(z_obs, w, sigma2, region);
    let mut half = opts.bracket_sigmas * sigma;
    let (mut lo, mut hi, mut f_lo, mut f_hi);
    let mut attempt = 0;
    loop {
        lo = z_obs - half;
        hi = z_obs + half;
        f_lo = f(lo)?;
        f_hi = f(hi)?;
        if f_lo >= target && target >= f_hi {
            break;
        }
        if attempt == opts.widenings {
            return Err(Error::RootNotBracketed {
                target,
                lo,
                hi,
                f_lo,
                f_hi,
            });
        }
        attempt += 1;
        half *= 10.0;
    }
    for _ in 0..opts.max_iterations {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if (f_mid - target).abs() <= opts.f_tol {
            return Ok(mid);
        }
        if f_mid > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= opts.w_tol * sigma {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
