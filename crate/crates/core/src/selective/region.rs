use serde::{Deserialize, Serialize};

use super::line::SelectionLine;
use crate::error::{Error, Result};
use crate::lp::{basis_stability_interval, plan_stability_interval, relative_costs};
use crate::model::{CostDecomposition, LpSolution, TransportProblem};
use crate::numerics::ExtendedInterval;

/// Absolute slack by which `z_obs` may sit outside a computed interval
/// before it is treated as an inconsistency (scaled by `max(1, |z_obs|)`).
pub const MEMBERSHIP_SLACK: f64 = 1e-9;
/// Relative size below which a slope is treated as zero.
pub const SLOPE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationRegion {
    pub z1: ExtendedInterval,
    pub z2: ExtendedInterval,
    pub z: ExtendedInterval,
}

/// Accumulates `{z : p + q z >= 0}` over many rows.
struct HalfLines {
    lo: f64,
    hi: f64,
    qtol: f64,
}

impl HalfLines {
    fn new(qscale: f64) -> Self {
        Self {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            qtol: SLOPE_TOL * qscale.max(1.0),
        }
    }

    fn push(&mut self, p: f64, q: f64, what: &str) -> Result<()> {
        if q > self.qtol {
            self.lo = self.lo.max(-p / q);
        } else if q < -self.qtol {
            self.hi = self.hi.min(-p / q);
        } else if p < -MEMBERSHIP_SLACK {
            return Err(Error::EmptyRegion(format!(
                "{what}: constant constraint violated ({p:e} < 0)"
            )));
        }
        Ok(())
    }

    fn finish(self, z_obs: f64, what: &str) -> Result<ExtendedInterval> {
        anchor(self.lo, self.hi, z_obs, what)
    }
}

/// Checks that `z_obs` lies in `[lo, hi]` up to slack and snaps the
/// interval to contain it exactly.
fn anchor(lo: f64, hi: f64, z_obs: f64, what: &str) -> Result<ExtendedInterval> {
    let slack = MEMBERSHIP_SLACK * z_obs.abs().max(1.0);
    if lo > z_obs + slack || hi < z_obs - slack {
        return Err(Error::EmptyRegion(format!(
            "{what} [{lo}, {hi}] excludes z_obs = {z_obs}"
        )));
    }
    Ok(ExtendedInterval {
        lo: lo.min(z_obs),
        hi: hi.max(z_obs),
    })
}

/// Values of `z` for which every pairwise difference along `a + b z` keeps
/// its observed sign, in every dimension.
pub fn compute_z1(costs: &CostDecomposition, line: &SelectionLine) -> Result<ExtendedInterval> {
    let rows = costs.n * costs.m;
    let mut nu2 = Vec::with_capacity(rows * costs.d);
    let mut nu1 = Vec::with_capacity(rows * costs.d);
    for (k, s) in costs.signs.iter().enumerate() {
        for (r, &sr) in s.iter().enumerate() {
            nu1.push(sr * costs.omega_k_row(r, k, &line.a_vec));
            nu2.push(sr * costs.omega_k_row(r, k, &line.b_vec));
        }
    }
    let scale = nu2.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut acc = HalfLines::new(scale);
    for (&p, &q) in nu1.iter().zip(&nu2) {
        acc.push(p, q, "sign region")?;
    }
    acc.finish(line.z_obs, "sign region")
}

/// Values of `z` for which the observed optimal plan stays optimal for the
/// costs `Theta_obs (a + b z)`.
///
/// For a non-degenerate solution this is the range of non-negative
/// relative costs of the observed basis. A degenerate vertex has several
/// bases; the range is then traced through all of them so that it depends
/// only on the plan, not on which basis the solver happened to stop at.
pub fn compute_z2(
    tp: &TransportProblem,
    costs: &CostDecomposition,
    sol: &LpSolution,
    line: &SelectionLine,
) -> Result<ExtendedInterval> {
    let u = costs.apply_theta(&line.a_vec);
    let v = costs.apply_theta(&line.b_vec);
    let iv = if sol.degenerate {
        plan_stability_interval(tp, &sol.basis, &u, &v, line.z_obs)?
    } else {
        let rc = relative_costs(tp, &sol.basis, &u, &v)?;
        basis_stability_interval(&rc)?
    };
    anchor(iv.lo, iv.hi, line.z_obs, "optimality region")
}

/// `Z = Z1 ∩ Z2`.
pub fn truncation_region(
    z1: ExtendedInterval,
    z2: ExtendedInterval,
    z_obs: f64,
) -> Result<TruncationRegion> {
    let z = z1
        .intersect(&z2)
        .ok_or_else(|| Error::EmptyRegion(format!("{z1:?} and {z2:?} are disjoint")))?;
    let z = anchor(z.lo, z.hi, z_obs, "truncation region")?;
    Ok(TruncationRegion { z1, z2, z })
}
