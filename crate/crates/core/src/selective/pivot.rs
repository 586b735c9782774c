use crate::error::{Error, Result};
use crate::numerics::{log_gauss_mass, ExtendedInterval};

/// CDF at `x` of `N(w, sigma2)` truncated to `region`.
///
/// Both pieces `[l, x]` and `[x, u]` are evaluated as log Gaussian masses
/// and the smaller one is divided by the total, so neither far tails nor
/// narrow regions produce `0 / 0`. `x` outside the region is clamped.
pub fn truncated_normal_cdf(x: f64, w: f64, sigma2: f64, region: &ExtendedInterval) -> Result<f64> {
    if !(sigma2 > 0.0) || !sigma2.is_finite() {
        return Err(Error::Domain(format!(
            "sigma2 must be positive, got {sigma2}"
        )));
    }
    if x.is_nan() || w.is_nan() {
        return Err(Error::Domain("NaN argument to truncated CDF".into()));
    }
    let sigma = sigma2.sqrt();
    let x = x.clamp(region.lo, region.hi);
    let lo = (region.lo - w) / sigma;
    let hi = (region.hi - w) / sigma;
    let xs = (x - w) / sigma;
    if xs <= lo {
        return Ok(0.0);
    }
    if xs >= hi {
        return Ok(1.0);
    }
    let total = log_gauss_mass(lo, hi)?;
    let below = piece(lo, xs)?;
    let above = piece(xs, hi)?;
    let f = if below <= above {
        (below - total).exp()
    } else {
        1.0 - (above - total).exp()
    };
    Ok(f.clamp(0.0, 1.0))
}

/// Log mass of a sub-piece; a piece too thin to register is `-inf`.
fn piece(lo: f64, hi: f64) -> Result<f64> {
    match log_gauss_mass(lo, hi) {
        Ok(v) => Ok(v),
        Err(Error::NumericalUnderflow(_)) => Ok(f64::NEG_INFINITY),
        Err(e) => Err(e),
    }
}
