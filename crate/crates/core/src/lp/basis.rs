//! Explicit basis-inverse bookkeeping shared by the simplex solver and the
//! parametric region walk.
//!
//! Transport bases are spanning trees of `K_{n,m}`; their matrices are
//! totally unimodular, so `B^-1` has entries in {-1, 0, 1} and rank-one
//! pivot updates stay well conditioned. The inverse is still rebuilt from
//! scratch every few pivots.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::TransportProblem;
use crate::numerics::inverse_checked;

pub(crate) const NOT_BASIC: usize = usize::MAX;

pub(crate) struct BasisState<'a> {
    tp: &'a TransportProblem,
    /// position -> column
    pub basis: Vec<usize>,
    /// column -> position, or `NOT_BASIC`
    pub position: Vec<usize>,
    binv: DMatrix<f64>,
    pub x_b: Vec<f64>,
    since_refactor: usize,
    refactor_every: usize,
}

impl<'a> BasisState<'a> {
    pub fn new(tp: &'a TransportProblem, basis: &[usize], refactor_every: usize) -> Result<Self> {
        if basis.len() != tp.rank() || basis.iter().any(|&c| c >= tp.num_vars()) {
            return Err(Error::SingularBasis);
        }
        let mut position = vec![NOT_BASIC; tp.num_vars()];
        for (p, &c) in basis.iter().enumerate() {
            if position[c] != NOT_BASIC {
                return Err(Error::SingularBasis);
            }
            position[c] = p;
        }
        let mut st = Self {
            tp,
            basis: basis.to_vec(),
            position,
            binv: DMatrix::zeros(0, 0),
            x_b: Vec::new(),
            since_refactor: 0,
            refactor_every: refactor_every.max(1),
        };
        st.refactor()?;
        Ok(st)
    }

    pub fn refactor(&mut self) -> Result<()> {
        let b = self.tp.basis_matrix(&self.basis);
        let (inv, _cond) = inverse_checked(&b).map_err(|e| match e {
            Error::SingularMatrix { .. } => Error::SingularBasis,
            other => other,
        })?;
        self.x_b = (0..inv.nrows())
            .map(|p| {
                inv.row(p)
                    .iter()
                    .zip(&self.tp.h_vec)
                    .map(|(a, h)| a * h)
                    .sum()
            })
            .collect();
        self.binv = inv;
        self.since_refactor = 0;
        Ok(())
    }

    pub fn is_basic(&self, col: usize) -> bool {
        self.position[col] != NOT_BASIC
    }

    /// Simplex multipliers `y^T = c_B^T B^-1`.
    pub fn duals(&self, c: &[f64]) -> Vec<f64> {
        let k = self.basis.len();
        let mut y = vec![0.0; k];
        for (r, yr) in y.iter_mut().enumerate() {
            let col = self.binv.column(r);
            *yr = self
                .basis
                .iter()
                .zip(col.iter())
                .map(|(&b, &v)| c[b] * v)
                .sum();
        }
        y
    }

    /// Relative cost `c_j - y^T S[:, j]`.
    #[inline]
    pub fn reduced_cost(&self, c: &[f64], y: &[f64], col: usize) -> f64 {
        let (r, cr) = self.tp.column_rows(col);
        c[col] - y[r] - cr.map_or(0.0, |cr| y[cr])
    }

    /// `B^-1 S[:, col]`.
    pub fn direction(&self, col: usize) -> Vec<f64> {
        let (r, cr) = self.tp.column_rows(col);
        let mut d: Vec<f64> = self.binv.column(r).iter().copied().collect();
        if let Some(cr) = cr {
            for (di, v) in d.iter_mut().zip(self.binv.column(cr).iter()) {
                *di += v;
            }
        }
        d
    }

    /// Minimum-ratio test; ties broken toward the smallest column index
    /// (Bland). Returns `(position, step)`, or `None` if no entry of the
    /// direction is positive.
    pub fn ratio_test(&self, dir: &[f64], pivot_tol: f64) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (p, (&d, &x)) in dir.iter().zip(&self.x_b).enumerate() {
            if d <= pivot_tol {
                continue;
            }
            let ratio = x.max(0.0) / d;
            best = match best {
                None => Some((p, ratio)),
                Some((bp, br)) => {
                    let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                    if ratio < br && !tie || tie && self.basis[p] < self.basis[bp] {
                        Some((p, ratio))
                    } else {
                        Some((bp, br))
                    }
                }
            };
        }
        best
    }

    /// Replaces the basic variable at `pos` with `col`, whose direction is
    /// `dir`.
    pub fn pivot(&mut self, pos: usize, col: usize, dir: &[f64]) -> Result<()> {
        let dp = dir[pos];
        let theta = self.x_b[pos].max(0.0) / dp;
        for (i, xi) in self.x_b.iter_mut().enumerate() {
            if i == pos {
                *xi = theta;
            } else {
                *xi -= theta * dir[i];
                if *xi < 0.0 && *xi > -1e-13 {
                    *xi = 0.0;
                }
            }
        }
        let k = self.basis.len();
        for j in 0..k {
            let piv = self.binv[(pos, j)] / dp;
            if piv == 0.0 {
                continue;
            }
            let mut colj = self.binv.column_mut(j);
            for i in 0..k {
                if i != pos {
                    colj[i] -= dir[i] * piv;
                }
            }
            colj[pos] = piv;
        }
        let leaving = self.basis[pos];
        self.position[leaving] = NOT_BASIC;
        self.position[col] = pos;
        self.basis[pos] = col;
        self.since_refactor += 1;
        if self.since_refactor >= self.refactor_every {
            self.refactor()?;
        }
        Ok(())
    }
}
