//! Dense linear solves for basis systems. Thin wrappers over nalgebra's
//! partially pivoted LU that add singularity and conditioning checks.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Reciprocal-pivot threshold relative to the largest entry of the matrix.
const PIVOT_REL_TOL: f64 = 1e-13;

/// Largest accepted 1-norm condition estimate.
pub const MAX_CONDITION: f64 = 1e12;

fn check_square(a: &DMatrix<f64>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(())
}

fn checked_lu(a: &DMatrix<f64>) -> Result<nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>> {
    check_square(a)?;
    let scale = a.amax().max(f64::MIN_POSITIVE);
    let lu = a.clone().lu();
    let u = lu.u();
    for k in 0..u.nrows() {
        let pivot = u[(k, k)];
        if !(pivot.abs() > PIVOT_REL_TOL * scale) {
            return Err(Error::SingularMatrix { column: k, pivot });
        }
    }
    Ok(lu)
}

/// Solves `A x = b` with partial pivoting.
pub fn solve_dense(a: &DMatrix<f64>, b: &[f64]) -> Result<Vec<f64>> {
    if a.nrows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.nrows(),
            b.len()
        )));
    }
    let lu = checked_lu(a)?;
    let rhs = DVector::from_column_slice(b);
    let x = lu.solve(&rhs).ok_or(Error::SingularMatrix {
        column: 0,
        pivot: 0.0,
    })?;
    Ok(x.as_slice().to_vec())
}

/// Inverse of a square matrix together with its 1-norm condition number
/// `||A||_1 ||A^-1||_1`. Fails with [`Error::NumericalFailure`] past
/// [`MAX_CONDITION`].
pub fn inverse_checked(a: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    let lu = checked_lu(a)?;
    let inv = lu.try_inverse().ok_or(Error::SingularMatrix {
        column: 0,
        pivot: 0.0,
    })?;
    let cond = norm_1(a) * norm_1(&inv);
    if !(cond <= MAX_CONDITION) {
        return Err(Error::NumericalFailure(format!(
            "basis condition estimate {cond:e} exceeds {MAX_CONDITION:e}"
        )));
    }
    Ok((inv, cond))
}

/// Maximum absolute column sum.
pub fn norm_1(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}
