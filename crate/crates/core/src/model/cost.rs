//! Pairwise l1 cost matrix and its linear representation
//! `c = Theta (vec X, vec Y)`.
//!
//! Row `r = i * m + j` (0-based) of every matrix here pairs `x_i` with `y_j`.
//! For `d = 1`, `Theta = signs ∘ Omega` with `Omega` the fixed difference
//! operator `e_i - e_{n+j}`. For general `d`, each dimension `k` contributes
//! `signs[k] ∘ (Omega ⊗ e_k^T)`, whose row `r` picks out `x_{i,k} - y_{j,k}`.

use nalgebra::DMatrix;

use super::instance::ProblemInstance;

/// Sign convention: an exact tie counts as positive.
#[inline]
pub fn sign(v: f64) -> f64 {
    if v >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostDecomposition {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    /// Vectorized cost matrix, row-major, length `n * m`.
    pub cost_vec: Vec<f64>,
    /// `nm x (n + m) d`.
    pub theta: DMatrix<f64>,
    /// One sign vector of length `nm` per dimension.
    pub signs: Vec<Vec<f64>>,
    /// `nm x (n + m)` difference operator.
    pub omega: DMatrix<f64>,
}

/// Builds `Omega` for `n` source and `m` target points.
pub fn build_omega(n: usize, m: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(n * m, n + m);
    for i in 0..n {
        for j in 0..m {
            let r = i * m + j;
            omega[(r, i)] = 1.0;
            omega[(r, n + j)] = -1.0;
        }
    }
    omega
}

/// Cost vector, `Theta`, per-dimension sign vectors and `Omega` for an
/// instance.
pub fn build_cost_decomposition(inst: &ProblemInstance) -> CostDecomposition {
    let (n, m, d) = (inst.n(), inst.m(), inst.d());
    let data = inst.data_vec();
    let signs = sign_vectors(&data, n, m, d);
    let mut theta = DMatrix::zeros(n * m, (n + m) * d);
    let mut cost_vec = vec![0.0; n * m];
    for i in 0..n {
        for j in 0..m {
            let r = i * m + j;
            for (k, s) in signs.iter().enumerate() {
                let (xc, yc) = (i * d + k, (n + j) * d + k);
                theta[(r, xc)] = s[r];
                theta[(r, yc)] = -s[r];
                cost_vec[r] += (data[xc] - data[yc]).abs();
            }
        }
    }
    CostDecomposition {
        n,
        m,
        d,
        cost_vec,
        theta,
        signs,
        omega: build_omega(n, m),
    }
}

/// `sign((Omega ⊗ e_k^T) data)` for every dimension `k`.
pub fn sign_vectors(data: &[f64], n: usize, m: usize, d: usize) -> Vec<Vec<f64>> {
    (0..d)
        .map(|k| {
            let mut s = Vec::with_capacity(n * m);
            for i in 0..n {
                for j in 0..m {
                    s.push(sign(data[i * d + k] - data[(n + j) * d + k]));
                }
            }
            s
        })
        .collect()
}

impl CostDecomposition {
    /// Difference `x_{i,k} - y_{j,k}` of `v` at pair row `r`, dimension `k`,
    /// i.e. row `r` of `(Omega ⊗ e_k^T) v`.
    #[inline]
    pub fn omega_k_row(&self, r: usize, k: usize, v: &[f64]) -> f64 {
        let (i, j) = (r / self.m, r % self.m);
        v[i * self.d + k] - v[(self.n + j) * self.d + k]
    }

    /// `Theta v`, exploiting the two-nonzeros-per-dimension row structure.
    pub fn apply_theta(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n * self.m)
            .map(|r| {
                self.signs
                    .iter()
                    .enumerate()
                    .map(|(k, s)| s[r] * self.omega_k_row(r, k, v))
                    .sum()
            })
            .collect()
    }

    /// `Theta^T t`.
    pub fn apply_theta_transpose(&self, t: &[f64]) -> Vec<f64> {
        let (n, m, d) = (self.n, self.m, self.d);
        let mut out = vec![0.0; (n + m) * d];
        for (r, &tr) in t.iter().enumerate() {
            if tr == 0.0 {
                continue;
            }
            let (i, j) = (r / m, r % m);
            for (k, s) in self.signs.iter().enumerate() {
                out[i * d + k] += s[r] * tr;
                out[(n + j) * d + k] -= s[r] * tr;
            }
        }
        out
    }
}
