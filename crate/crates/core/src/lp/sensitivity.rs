//! Sensitivity of an optimal transport basis along a cost line
//! `c(z) = u + v z`.
//!
//! [`basis_stability_interval`] is the classical range on which one fixed
//! basis keeps non-negative relative costs. [`plan_stability_interval`] is
//! the range on which the optimal *plan* stays optimal; for a
//! non-degenerate basis the two coincide, while for degenerate bases the
//! plan range is found by pivoting through the alternative bases that
//! describe the same vertex.

use crate::error::{Error, Result};
use crate::model::TransportProblem;
use crate::numerics::ExtendedInterval;

use super::basis::BasisState;

/// Relative costs of the nonbasic columns for the two halves of a cost line.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeCostPair {
    pub u_tilde: Vec<f64>,
    pub v_tilde: Vec<f64>,
    /// Nonbasic column indices, aligned with the two vectors above.
    pub nonbasis: Vec<usize>,
}

/// Steps at or below this size count as degenerate pivots.
const STEP_TOL: f64 = 1e-11;
/// Cap on the number of zero-step pivots in one direction.
const MAX_WALK: usize = 100_000;

fn slope_tol(v: &[f64]) -> f64 {
    1e-12 * v.iter().fold(1.0f64, |a, x| a.max(x.abs()))
}

fn check_line(tp: &TransportProblem, u: &[f64], v: &[f64]) -> Result<()> {
    if u.len() != tp.num_vars() || v.len() != tp.num_vars() {
        return Err(Error::DimensionMismatch(format!(
            "cost line has lengths {}/{}, expected {}",
            u.len(),
            v.len(),
            tp.num_vars()
        )));
    }
    Ok(())
}

fn relative_costs_of(st: &BasisState<'_>, nvars: usize, u: &[f64], v: &[f64]) -> RelativeCostPair {
    let yu = st.duals(u);
    let yv = st.duals(v);
    let nonbasis: Vec<usize> = (0..nvars).filter(|&c| !st.is_basic(c)).collect();
    RelativeCostPair {
        u_tilde: nonbasis
            .iter()
            .map(|&c| st.reduced_cost(u, &yu, c))
            .collect(),
        v_tilde: nonbasis
            .iter()
            .map(|&c| st.reduced_cost(v, &yv, c))
            .collect(),
        nonbasis,
    }
}

/// `u_N - (B^-T u_B)^T S_N` and the same for `v`, for the basis `basis`.
pub fn relative_costs(
    tp: &TransportProblem,
    basis: &[usize],
    u: &[f64],
    v: &[f64],
) -> Result<RelativeCostPair> {
    check_line(tp, u, v)?;
    let st = BasisState::new(tp, basis, usize::MAX)?;
    Ok(relative_costs_of(&st, tp.num_vars(), u, v))
}

/// `{z : u_tilde + v_tilde z >= 0}`. Columns whose slope is negligible only
/// constrain the line if their intercept is negative, which makes the set
/// empty.
pub fn basis_stability_interval(rc: &RelativeCostPair) -> Result<ExtendedInterval> {
    let vtol = slope_tol(&rc.v_tilde);
    let utol = 1e-9 * rc.u_tilde.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (&ut, &vt) in rc.u_tilde.iter().zip(&rc.v_tilde) {
        if vt > vtol {
            lo = lo.max(-ut / vt);
        } else if vt < -vtol {
            hi = hi.min(-ut / vt);
        } else if ut < -utol {
            return Err(Error::EmptyRegion(
                "basis is not optimal anywhere on the line".into(),
            ));
        }
    }
    if lo > hi && lo - hi <= 1e-9 * lo.abs().max(1.0) {
        // tied plans: the basis is optimal at a single point, up to rounding
        return Ok(ExtendedInterval { lo: hi, hi });
    }
    ExtendedInterval::new(lo, hi)
        .ok_or_else(|| Error::EmptyRegion(format!("basis stability bounds cross: [{lo}, {hi}]")))
}

/// Interval of `z` on which the basic solution of `basis` (optimal at
/// `z_obs`) remains an optimal plan for the costs `u + v z`.
pub fn plan_stability_interval(
    tp: &TransportProblem,
    basis: &[usize],
    u: &[f64],
    v: &[f64],
    z_obs: f64,
) -> Result<ExtendedInterval> {
    check_line(tp, u, v)?;
    let hi = walk_up(tp, basis, u, v, z_obs)?;
    let neg_v: Vec<f64> = v.iter().map(|x| -x).collect();
    let lo = -walk_up(tp, basis, u, &neg_v, -z_obs)?;
    ExtendedInterval::new(lo.min(z_obs), hi.max(z_obs))
        .ok_or_else(|| Error::NumericalFailure(format!("invalid plan interval [{lo}, {hi}]")))
}

/// Upper end of the plan's optimality range, starting at `z0`.
fn walk_up(tp: &TransportProblem, basis: &[usize], u: &[f64], v: &[f64], z0: f64) -> Result<f64> {
    let mut st = BasisState::new(tp, basis, 64)?;
    let vtol = slope_tol(v);
    let mut z = z0;
    for _ in 0..MAX_WALK {
        let rc = relative_costs_of(&st, tp.num_vars(), u, v);
        let breaks: Vec<(usize, f64)> = rc
            .nonbasis
            .iter()
            .zip(rc.u_tilde.iter().zip(&rc.v_tilde))
            .filter(|(_, (_, &vt))| vt < -vtol)
            .map(|(&c, (&ut, &vt))| (c, (-ut / vt).max(z)))
            .collect();
        let Some(zb) = breaks.iter().map(|b| b.1).min_by(f64::total_cmp) else {
            return Ok(f64::INFINITY);
        };
        let ztol = 1e-12 * (1.0 + zb.abs());
        let col = breaks
            .iter()
            .filter(|b| b.1 <= zb + ztol)
            .map(|b| b.0)
            .min()
            .expect("at least one breakpoint attains the minimum");
        let dir = st.direction(col);
        let Some((pos, step)) = st.ratio_test(&dir, 1e-9) else {
            return Err(Error::NumericalFailure(
                "unbounded direction in the region walk".into(),
            ));
        };
        if step > STEP_TOL {
            return Ok(zb);
        }
        st.pivot(pos, col, &dir)?;
        z = zb;
    }
    Err(Error::NumericalFailure(
        "region walk exceeded its pivot budget".into(),
    ))
}
