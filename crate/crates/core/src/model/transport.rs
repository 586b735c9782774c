//! The transportation polytope `{t >= 0 : S t = h}` with uniform marginals.
//!
//! `S` stacks the `n` row-sum constraints over the `m` column-sum
//! constraints. The full system has exactly one redundant equation (total
//! mass is 1 on both sides); the last column-sum row is always dropped, so
//! `S` here is `(n + m - 1) x nm` with full row rank.

use nalgebra::DMatrix;

use super::cost::CostDecomposition;
use super::instance::ProblemInstance;
use crate::error::{Error, Result};
use crate::numerics::solve_dense;

#[derive(Debug, Clone, PartialEq)]
pub struct TransportProblem {
    pub n: usize,
    pub m: usize,
    /// `(n + m - 1) x nm` 0/1 constraint matrix.
    pub s_mat: DMatrix<f64>,
    /// `1/n` repeated `n` times, then `1/m` repeated `m - 1` times.
    pub h_vec: Vec<f64>,
    pub cost_vec: Vec<f64>,
}

impl TransportProblem {
    /// Transport problem for an arbitrary cost vector of length `n * m`.
    pub fn new(n: usize, m: usize, cost_vec: Vec<f64>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidInstance(format!(
                "need n, m >= 1 (got n={n}, m={m})"
            )));
        }
        if cost_vec.len() != n * m {
            return Err(Error::DimensionMismatch(format!(
                "cost vector has length {}, expected {}",
                cost_vec.len(),
                n * m
            )));
        }
        if cost_vec.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInstance("non-finite cost".into()));
        }
        let k = n + m - 1;
        let mut s_mat = DMatrix::zeros(k, n * m);
        for col in 0..n * m {
            let (row, col_row) = constraint_rows(n, m, col);
            s_mat[(row, col)] = 1.0;
            if let Some(cr) = col_row {
                s_mat[(cr, col)] = 1.0;
            }
        }
        let mut h_vec = vec![1.0 / n as f64; n];
        h_vec.extend(std::iter::repeat_n(1.0 / m as f64, m - 1));
        Ok(Self {
            n,
            m,
            s_mat,
            h_vec,
            cost_vec,
        })
    }

    /// Number of equality constraints kept (= basis size).
    pub fn rank(&self) -> usize {
        self.n + self.m - 1
    }

    pub fn num_vars(&self) -> usize {
        self.n * self.m
    }

    /// Rows of `S` holding the nonzeros of column `col`.
    #[inline]
    pub fn column_rows(&self, col: usize) -> (usize, Option<usize>) {
        constraint_rows(self.n, self.m, col)
    }

    /// `S[:, cols]`.
    pub fn basis_matrix(&self, cols: &[usize]) -> DMatrix<f64> {
        let k = self.rank();
        let mut b = DMatrix::zeros(k, cols.len());
        for (p, &c) in cols.iter().enumerate() {
            let (r, cr) = self.column_rows(c);
            b[(r, p)] = 1.0;
            if let Some(cr) = cr {
                b[(cr, p)] = 1.0;
            }
        }
        b
    }

    /// Same polytope, different cost.
    pub fn with_costs(&self, cost_vec: Vec<f64>) -> Result<Self> {
        Self::new(self.n, self.m, cost_vec)
    }

    /// Max violation of `S t = h` over all `n + m` original constraints
    /// (including the dropped one).
    pub fn marginal_violation(&self, t_full: &[f64]) -> f64 {
        let (n, m) = (self.n, self.m);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let s: f64 = t_full[i * m..(i + 1) * m].iter().sum();
            worst = worst.max((s - 1.0 / n as f64).abs());
        }
        for j in 0..m {
            let s: f64 = (0..n).map(|i| t_full[i * m + j]).sum();
            worst = worst.max((s - 1.0 / m as f64).abs());
        }
        worst
    }
}

#[inline]
fn constraint_rows(n: usize, m: usize, col: usize) -> (usize, Option<usize>) {
    let (i, j) = (col / m, col % m);
    (i, (j + 1 < m).then_some(n + j))
}

/// Transport problem for an instance's cost decomposition.
pub fn build_transport_problem(
    inst: &ProblemInstance,
    costs: &CostDecomposition,
) -> Result<TransportProblem> {
    if costs.n != inst.n() || costs.m != inst.m() {
        return Err(Error::DimensionMismatch(
            "cost decomposition does not belong to this instance".into(),
        ));
    }
    TransportProblem::new(inst.n(), inst.m(), costs.cost_vec.clone())
}

/// An optimal basic feasible solution.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    /// Basic column indices (0-based, ascending), `n + m - 1` of them.
    pub basis: Vec<usize>,
    /// Values of the basic variables, aligned with `basis`.
    pub t_basic: Vec<f64>,
    pub objective: f64,
    /// Full plan of length `nm`, zero off the basis.
    pub t_full: Vec<f64>,
    /// Some basic variable sits at or below the degeneracy threshold.
    pub degenerate: bool,
}

impl LpSolution {
    /// Basis as 1-based indices, for reports.
    pub fn basis_one_based(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b + 1).collect()
    }

    /// Position and value of the smallest basic variable.
    pub fn min_basic(&self) -> (usize, f64) {
        self.basis
            .iter()
            .zip(&self.t_basic)
            .map(|(&b, &v)| (b, v))
            .fold(
                (0, f64::INFINITY),
                |acc, x| if x.1 < acc.1 { x } else { acc },
            )
    }
}

/// `t_M^T Theta_{M,:} (vec X, vec Y)` with `t_M = S[:, M]^{-1} h` recomputed
/// from the basis alone.
pub fn distance_from_basis(
    sol: &LpSolution,
    costs: &CostDecomposition,
    inst: &ProblemInstance,
) -> Result<f64> {
    let tp = TransportProblem::new(inst.n(), inst.m(), costs.cost_vec.clone())?;
    if sol.basis.len() != tp.rank() {
        return Err(Error::SingularBasis);
    }
    let b = tp.basis_matrix(&sol.basis);
    let t_m = solve_dense(&b, &tp.h_vec).map_err(|_| Error::SingularBasis)?;
    let data = inst.data_vec();
    let mut total = 0.0;
    for (&col, &t) in sol.basis.iter().zip(&t_m) {
        let row_cost: f64 = costs
            .signs
            .iter()
            .enumerate()
            .map(|(k, s)| s[col] * costs.omega_k_row(col, k, &data))
            .sum();
        total += t * row_cost;
    }
    Ok(total)
}
