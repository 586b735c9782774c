use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Symmetry tolerance for user-supplied covariance matrices.
pub const SYMMETRY_TOL: f64 = 1e-8;
/// Diagonal jitter added before the PSD Cholesky check.
pub const PSD_JITTER: f64 = 1e-10;

/// Noise covariance of one vectorized sample.
#[derive(Debug, Clone, PartialEq)]
pub enum Covariance {
    /// `variance * I` of the given dimension.
    Isotropic { variance: f64, dim: usize },
    /// A full symmetric PSD matrix.
    Full(DMatrix<f64>),
}

impl Covariance {
    pub fn dim(&self) -> usize {
        match self {
            Covariance::Isotropic { dim, .. } => *dim,
            Covariance::Full(m) => m.nrows(),
        }
    }

    /// Validates a full matrix: square, symmetric to [`SYMMETRY_TOL`], and
    /// Cholesky-factorable after adding [`PSD_JITTER`] to the diagonal. The
    /// stored matrix is the symmetric part of the input.
    pub fn full(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "covariance must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInstance("non-finite covariance entry".into()));
        }
        let asym = (&matrix - matrix.transpose()).amax();
        if asym > SYMMETRY_TOL * matrix.amax().max(1.0) {
            return Err(Error::NotPositiveSemidefinite(format!(
                "asymmetry {asym:e} exceeds {SYMMETRY_TOL:e}"
            )));
        }
        let sym = (&matrix + matrix.transpose()) * 0.5;
        let cov = Covariance::Full(sym);
        cov.cholesky_factor()?;
        Ok(cov)
    }

    pub fn isotropic(variance: f64, dim: usize) -> Result<Self> {
        if !(variance.is_finite() && variance >= 0.0) {
            return Err(Error::InvalidInstance(format!(
                "noise variance must be finite and non-negative, got {variance}"
            )));
        }
        Ok(Covariance::Isotropic { variance, dim })
    }

    /// Lower Cholesky factor of `Sigma + jitter I`, used for sampling.
    pub fn cholesky_factor(&self) -> Result<DMatrix<f64>> {
        let mut m = self.to_dense();
        for i in 0..m.nrows() {
            m[(i, i)] += PSD_JITTER;
        }
        m.cholesky()
            .map(|c| c.l())
            .ok_or_else(|| Error::NotPositiveSemidefinite("Cholesky factorization failed".into()))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match self {
            Covariance::Isotropic { variance, dim } => DMatrix::identity(*dim, *dim) * *variance,
            Covariance::Full(m) => m.clone(),
        }
    }

    /// `Sigma v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        match self {
            Covariance::Isotropic { variance, .. } => v.iter().map(|x| x * variance).collect(),
            Covariance::Full(m) => (0..m.nrows())
                .map(|i| m.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
                .collect(),
        }
    }
}

/// Two samples `X` (n x d) and `Y` (m x d) with the covariances of their
/// row-major vectorizations.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    x_rows: DMatrix<f64>,
    y_rows: DMatrix<f64>,
    sigma_x: Covariance,
    sigma_y: Covariance,
}

impl ProblemInstance {
    pub fn new(
        x_rows: DMatrix<f64>,
        y_rows: DMatrix<f64>,
        sigma_x: Covariance,
        sigma_y: Covariance,
    ) -> Result<Self> {
        let (n, d) = x_rows.shape();
        let (m, dy) = y_rows.shape();
        if n == 0 || m == 0 || d == 0 {
            return Err(Error::InvalidInstance(format!(
                "need n, m, d >= 1 (got n={n}, m={m}, d={d})"
            )));
        }
        if d != dy {
            return Err(Error::DimensionMismatch(format!(
                "X has {d} columns but Y has {dy}"
            )));
        }
        if x_rows.iter().chain(y_rows.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInstance("non-finite sample value".into()));
        }
        if sigma_x.dim() != n * d || sigma_y.dim() != m * d {
            return Err(Error::DimensionMismatch(format!(
                "covariance sizes {}/{} do not match n*d={} / m*d={}",
                sigma_x.dim(),
                sigma_y.dim(),
                n * d,
                m * d
            )));
        }
        Ok(Self {
            x_rows,
            y_rows,
            sigma_x,
            sigma_y,
        })
    }

    /// Instance with covariance `variance * I` on both samples.
    pub fn isotropic(x_rows: DMatrix<f64>, y_rows: DMatrix<f64>, variance: f64) -> Result<Self> {
        let nd = x_rows.len();
        let md = y_rows.len();
        Self::new(
            x_rows,
            y_rows,
            Covariance::isotropic(variance, nd)?,
            Covariance::isotropic(variance, md)?,
        )
    }

    /// One-dimensional instance from plain slices.
    pub fn from_1d(x: &[f64], y: &[f64], variance: f64) -> Result<Self> {
        Self::isotropic(
            DMatrix::from_column_slice(x.len(), 1, x),
            DMatrix::from_column_slice(y.len(), 1, y),
            variance,
        )
    }

    /// Instance from row vectors; all rows must share one length.
    pub fn from_rows(x: &[Vec<f64>], y: &[Vec<f64>], variance: f64) -> Result<Self> {
        Self::isotropic(rows_to_matrix(x)?, rows_to_matrix(y)?, variance)
    }

    pub fn n(&self) -> usize {
        self.x_rows.nrows()
    }

    pub fn m(&self) -> usize {
        self.y_rows.nrows()
    }

    pub fn d(&self) -> usize {
        self.x_rows.ncols()
    }

    pub fn x_rows(&self) -> &DMatrix<f64> {
        &self.x_rows
    }

    pub fn y_rows(&self) -> &DMatrix<f64> {
        &self.y_rows
    }

    pub fn sigma_x(&self) -> &Covariance {
        &self.sigma_x
    }

    pub fn sigma_y(&self) -> &Covariance {
        &self.sigma_y
    }

    /// `(vec X, vec Y)` with rows concatenated.
    pub fn data_vec(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity((self.n() + self.m()) * self.d());
        for rows in [&self.x_rows, &self.y_rows] {
            for i in 0..rows.nrows() {
                out.extend(rows.row(i).iter());
            }
        }
        out
    }

    /// Block-diagonal `diag(Sigma_X, Sigma_Y)` applied to `v`.
    pub fn sigma_tilde_apply(&self, v: &[f64]) -> Vec<f64> {
        let split = self.n() * self.d();
        let mut out = self.sigma_x.apply(&v[..split]);
        out.extend(self.sigma_y.apply(&v[split..]));
        out
    }

    /// Same instance with both samples' covariances replaced.
    pub fn with_covariances(&self, sigma_x: Covariance, sigma_y: Covariance) -> Result<Self> {
        Self::new(self.x_rows.clone(), self.y_rows.clone(), sigma_x, sigma_y)
    }

    /// Same noise model at a different data point (row-major `(vec X, vec Y)`).
    pub fn with_data(&self, data: &[f64]) -> Result<Self> {
        let (n, m, d) = (self.n(), self.m(), self.d());
        if data.len() != (n + m) * d {
            return Err(Error::DimensionMismatch(format!(
                "data vector has length {}, expected {}",
                data.len(),
                (n + m) * d
            )));
        }
        let x = DMatrix::from_row_slice(n, d, &data[..n * d]);
        let y = DMatrix::from_row_slice(m, d, &data[n * d..]);
        Self::new(x, y, self.sigma_x.clone(), self.sigma_y.clone())
    }
}

pub(crate) fn rows_to_matrix(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let d = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch("ragged rows".into()));
    }
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    Ok(DMatrix::from_row_slice(rows.len(), d, &flat))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectorization_is_row_major() {
        let inst =
            ProblemInstance::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]], &[vec![5.0, 6.0]], 1.0)
                .unwrap();
        assert_eq!(inst.data_vec(), vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!((inst.n(), inst.m(), inst.d()), (2, 1, 2));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ProblemInstance::from_1d(&[], &[1.0], 1.0).is_err());
        let e = ProblemInstance::from_rows(&[vec![1.0, 2.0]], &[vec![1.0]], 1.0);
        assert!(matches!(e, Err(Error::DimensionMismatch(_))));
        let x = DMatrix::from_row_slice(2, 1, &[0.0, 1.0]);
        let y = DMatrix::from_row_slice(1, 1, &[0.0]);
        let e = ProblemInstance::new(
            x,
            y,
            Covariance::isotropic(1.0, 3).unwrap(),
            Covariance::isotropic(1.0, 1).unwrap(),
        );
        assert!(matches!(e, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn covariance_checks() {
        let asym = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        assert!(matches!(
            Covariance::full(asym),
            Err(Error::NotPositiveSemidefinite(_))
        ));
        let indefinite = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(Covariance::full(indefinite).is_err());
        // PSD but singular passes thanks to the jitter.
        let singular = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(Covariance::full(singular).is_ok());
        // tiny asymmetry is projected away
        let nearly = DMatrix::from_row_slice(2, 2, &[2.0, 0.5 + 1e-10, 0.5, 1.0]);
        let Covariance::Full(m) = Covariance::full(nearly).unwrap() else {
            unreachable!()
        };
        assert_eq!(m[(0, 1)], m[(1, 0)]);
        assert!(Covariance::isotropic(-1.0, 2).is_err());
    }

    #[test]
    fn sigma_tilde_is_block_diagonal() {
        let cx = Covariance::full(DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0])).unwrap();
        let cy = Covariance::isotropic(3.0, 1).unwrap();
        let inst = ProblemInstance::new(
            DMatrix::from_row_slice(2, 1, &[0.0, 1.0]),
            DMatrix::from_row_slice(1, 1, &[5.0]),
            cx,
            cy,
        )
        .unwrap();
        assert_eq!(
            inst.sigma_tilde_apply(&[1.0, 0.0, 1.0]),
            vec![2.0, 1.0, 3.0]
        );
    }
}
