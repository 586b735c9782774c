use crate::error::{Error, Result};
use crate::model::{CostDecomposition, LpSolution, ProblemInstance};

/// Smallest admissible `eta^T Sigma eta`.
pub const MIN_SIGMA2: f64 = 1e-14;

/// The data restricted to the line `a + b z` through the observation.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionLine {
    pub eta: Vec<f64>,
    pub a_vec: Vec<f64>,
    pub b_vec: Vec<f64>,
    pub z_obs: f64,
    pub sigma2: f64,
}

impl SelectionLine {
    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    /// `a + b z`.
    pub fn point(&self, z: f64) -> Vec<f64> {
        self.a_vec
            .iter()
            .zip(&self.b_vec)
            .map(|(a, b)| a + b * z)
            .collect()
    }
}

/// `eta = Theta^T t` for the optimal plan. Since `t` vanishes off the basis
/// this is the same as `Theta_{M,:}^T t_M`.
pub fn build_eta(costs: &CostDecomposition, sol: &LpSolution) -> Vec<f64> {
    costs.apply_theta_transpose(&sol.t_full)
}

/// Decomposes `data = a + b z_obs` with `z_obs = eta^T data`,
/// `b = Sigma eta / sigma2` and `a = (I - b eta^T) data`. `sigma_apply`
/// multiplies a vector by the block-diagonal noise covariance.
pub fn nuisance_line(
    eta: &[f64],
    sigma_apply: impl Fn(&[f64]) -> Vec<f64>,
    data: &[f64],
) -> Result<SelectionLine> {
    if eta.len() != data.len() {
        return Err(Error::DimensionMismatch(format!(
            "eta has length {}, data {}",
            eta.len(),
            data.len()
        )));
    }
    let s_eta = sigma_apply(eta);
    let sigma2 = dot(eta, &s_eta);
    if !(sigma2 > MIN_SIGMA2) {
        return Err(Error::DegenerateDirection { sigma2 });
    }
    let z_obs = dot(eta, data);
    let b_vec: Vec<f64> = s_eta.iter().map(|v| v / sigma2).collect();
    let a_vec = data
        .iter()
        .zip(&b_vec)
        .map(|(x, b)| x - b * z_obs)
        .collect();
    Ok(SelectionLine {
        eta: eta.to_vec(),
        a_vec,
        b_vec,
        z_obs,
        sigma2,
    })
}

/// [`nuisance_line`] with the instance's own covariance and data.
pub fn nuisance_line_for(inst: &ProblemInstance, eta: &[f64]) -> Result<SelectionLine> {
    nuisance_line(eta, |v| inst.sigma_tilde_apply(v), &inst.data_vec())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
