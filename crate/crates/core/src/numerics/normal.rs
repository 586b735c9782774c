//! Standard normal distribution kernels.
//!
//! `normal_cdf` and `log_normal_cdf` are built on `erfc`, switching to a
//! continued fraction for the Mills ratio once the lower tail leaves the
//! range where `erfc` is representable. `log_gauss_mass` is the workhorse of
//! the truncated-normal pivot: it evaluates the log of the Gaussian mass of
//! an interval without ever forming `Phi(hi) - Phi(lo)` in the cancelling
//! tail.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI};

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this point `erfc` output becomes subnormal.
const CF_SWITCH: f64 = -37.0;

/// Standard normal density.
#[inline]
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x - LN_SQRT_2PI).exp()
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Standard normal survival function `1 - Phi(x)` without cancellation.
#[inline]
pub fn normal_sf(x: f64) -> f64 {
    normal_cdf(-x)
}

/// Mills ratio `R(t) = (1 - Phi(t)) / phi(t)` for large positive `t`,
/// by backward evaluation of its continued fraction
/// `1 / (t + 1 / (t + 2 / (t + 3 / (t + ...))))`.
fn mills_ratio_cf(t: f64) -> f64 {
    debug_assert!(t >= 5.0);
    let mut acc = t;
    for k in (1..=60).rev() {
        acc = t + k as f64 / acc;
    }
    1.0 / acc
}

/// `ln Phi(x)`, finite for every finite `x`.
pub fn log_normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if x > 0.0 {
        (-normal_cdf(-x)).ln_1p()
    } else if x > CF_SWITCH {
        normal_cdf(x).ln()
    } else {
        -0.5 * x * x - LN_SQRT_2PI + mills_ratio_cf(-x).ln()
    }
}

/// `ln(1 - exp(d))` for `d <= 0`.
#[inline]
fn log1m_exp(d: f64) -> f64 {
    if d > -LN_2 {
        (-d.exp_m1()).ln()
    } else {
        (-d.exp()).ln_1p()
    }
}

/// Log of the standard Gaussian mass of `[lo, hi]`. Infinite endpoints are
/// allowed. Intervals in either tail are folded onto the lower tail and
/// evaluated as a log-difference; intervals straddling zero are summed from
/// two `erf` halves, which never cancel.
///
/// Returns [`Error::NumericalUnderflow`] if the mass is zero in floating
/// point even after these reformulations (a zero-width interval, in
/// practice).
pub fn log_gauss_mass(lo: f64, hi: f64) -> Result<f64> {
    if lo.is_nan() || hi.is_nan() {
        return Err(Error::Domain("NaN interval endpoint".into()));
    }
    if lo > hi {
        return Err(Error::Domain(format!("reversed interval [{lo}, {hi}]")));
    }
    let value = if hi <= 0.0 {
        lower_tail_log_mass(lo, hi)
    } else if lo >= 0.0 {
        lower_tail_log_mass(-hi, -lo)
    } else {
        let upper = 0.5 * libm::erf(hi * FRAC_1_SQRT_2);
        let lower = 0.5 * libm::erf(-lo * FRAC_1_SQRT_2);
        (upper + lower).ln()
    };
    if value == f64::NEG_INFINITY || value.is_nan() {
        return Err(Error::NumericalUnderflow(format!(
            "Gaussian mass of [{lo}, {hi}]"
        )));
    }
    Ok(value)
}

/// `ln(Phi(hi) - Phi(lo))` for `lo <= hi <= 0`.
fn lower_tail_log_mass(lo: f64, hi: f64) -> f64 {
    let log_hi = log_normal_cdf(hi);
    if lo == f64::NEG_INFINITY {
        return log_hi;
    }
    let log_lo = log_normal_cdf(lo);
    let d = log_lo - log_hi;
    if d >= 0.0 {
        return f64::NEG_INFINITY;
    }
    log_hi + log1m_exp(d)
}

/// Inverse of the standard normal CDF.
///
/// A rational starting point (Abramowitz & Stegun 26.2.23, error below
/// 4.5e-4) is polished with Halley steps against the lower-tail CDF, which
/// converges cubically to full double precision.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "normal quantile requires p in (0, 1), got {p}"
        )));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        // 1 - p is exact here.
        return Ok(-lower_quantile(1.0 - p));
    }
    Ok(lower_quantile(p))
}

fn lower_quantile(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 0.5);
    let t = (-2.0 * p.ln()).sqrt();
    let num = 2.515_517 + t * (0.802_853 + t * 0.010_328);
    let den = 1.0 + t * (1.432_788 + t * (0.189_269 + t * 0.001_308));
    let mut x = -(t - num / den);
    for _ in 0..4 {
        let f = normal_cdf(x) - p;
        let u = f / normal_pdf(x);
        let step = u / (1.0 + 0.5 * x * u);
        x -= step;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// `sqrt(2 pi)`, exposed for tests and density normalisation elsewhere.
pub fn sqrt_two_pi() -> f64 {
    (2.0 * PI).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Reference values: 50-digit mpmath `ncdf`.
    const CDF_TABLE: &[(f64, f64)] = &[
        (-37.0, 5.725_571_222_524_577e-300),
        (-30.0, 4.906_713_927_148_187e-198),
        (-20.0, 2.753_624_118_606_233_7e-89),
        (-10.0, 7.619_853_024_160_526e-24),
        (-5.0, 2.866_515_718_791_939e-7),
        (-1.0, 0.158_655_253_931_457_05),
        (0.5, 0.691_462_461_274_013_1),
        (3.0, 0.998_650_101_968_369_9),
    ];

    #[test]
    fn cdf_matches_high_precision_table() {
        for &(x, want) in CDF_TABLE {
            assert!(rel(normal_cdf(x), want) <= 1e-10, "x = {x}");
            assert!((log_normal_cdf(x) - want.ln()).abs() <= 1e-10, "x = {x}");
        }
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(-10.0) - 7.6199e-24).abs() <= 1e-27);
    }

    #[test]
    fn cdf_at_minus_38_is_subnormal_but_close() {
        // Phi(-38) ~ 2.885e-316 lies below f64::MIN_POSITIVE; the representable
        // relative precision there is only ~2e-8.
        let want = 2.885_428_35e-316;
        assert!(rel(normal_cdf(-38.0), want) <= 1e-7);
        assert!((log_normal_cdf(-38.0) - (-726.557_216_018_820_1_f64)).abs() < 1e-9);
    }

    #[test]
    fn log_cdf_far_tail() {
        // mpmath: ln Phi(-50), ln Phi(-200)
        assert!((log_normal_cdf(-50.0) - (-1_254.831_361_139_42)).abs() <= 1e-9);
        assert!((log_normal_cdf(-200.0) - (-20_006.217_280_898_19)).abs() <= 1e-8);
        // continuity across the continued-fraction switch
        let a = log_normal_cdf(CF_SWITCH + 1e-9);
        let b = log_normal_cdf(CF_SWITCH - 1e-9);
        assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn quantile_known_value_and_domain() {
        assert!((normal_quantile(0.975).unwrap() - 1.959_963_984_540_054).abs() <= 1e-12);
        assert!((normal_quantile(0.975).unwrap() - 1.959964).abs() <= 1e-6);
        assert_eq!(normal_quantile(0.5).unwrap(), 0.0);
        assert!(normal_quantile(0.0).is_err());
        assert!(normal_quantile(1.0).is_err());
        assert!(normal_quantile(f64::NAN).is_err());
    }

    #[test]
    fn quantile_round_trip_grid() {
        let mut p = 1e-12;
        while p < 1.0 - 1e-12 {
            let q = normal_quantile(p).unwrap();
            assert!((normal_cdf(q) - p).abs() <= 1e-12, "p = {p}");
            p = if p < 0.01 { p * 1.7 } else { p + 0.0037 };
        }
        let q = normal_quantile(1.0 - 1e-12).unwrap();
        assert!((normal_cdf(q) - (1.0 - 1e-12)).abs() <= 1e-12);
    }

    #[test]
    fn log_mass_reference_values() {
        assert_eq!(
            log_gauss_mass(f64::NEG_INFINITY, f64::INFINITY).unwrap(),
            0.0
        );
        assert!((log_gauss_mass(0.0, f64::INFINITY).unwrap() - 0.5f64.ln()).abs() < 1e-15);
        // mpmath quadrature of the density
        assert!((log_gauss_mass(8.0, 9.0).unwrap() - (-35.013_618_593_437_15)).abs() <= 1e-9);
        assert!((log_gauss_mass(40.0, 41.0).unwrap() - (-804.608_442_013_753_8)).abs() <= 1e-9);
        assert!((log_gauss_mass(-3.0, -2.5).unwrap() - (-5.326_764_724_079_062)).abs() <= 1e-12);
        assert!((log_gauss_mass(-0.001, 0.002).unwrap() - (-6.728_082_023_518_55)).abs() <= 1e-12);
    }

    #[test]
    fn log_mass_errors() {
        assert!(matches!(
            log_gauss_mass(1.0, 1.0),
            Err(Error::NumericalUnderflow(_))
        ));
        assert!(matches!(log_gauss_mass(2.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn log_mass_tiny_central_interval_keeps_precision() {
        let w = 1e-9;
        let got = log_gauss_mass(-w, w).unwrap();
        let want = (2.0 * w / sqrt_two_pi()).ln();
        assert!((got - want).abs() < 1e-12);
    }
}
