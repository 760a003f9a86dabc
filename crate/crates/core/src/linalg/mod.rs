//! Dense complex matrices and Hermitian spectral computation.
//!
//! Every numerical question in the crate reduces to an eigenvalue problem on
//! a Hermitian matrix, answered by [`hermitian_eigen`].

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigen, SpectralResult, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;

use thiserror::Error;

/// Relative asymmetry tolerated before a matrix is rejected as non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Default absolute tolerance on eigenvalues for positivity decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries, got {got}")]
    DataLength { expected: usize, got: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: ‖M − M*‖_F = {defect:e}")]
    NotHermitian { defect: f64 },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is singular: smallest eigenvalue {lambda_min:e} ≤ tolerance")]
    Singular { lambda_min: f64 },
    #[error("matrix is not positive semidefinite: smallest eigenvalue {lambda_min:e}")]
    NotPsd { lambda_min: f64 },
}

fn require_square(m: &ComplexMatrix) -> Result<(), LinalgError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// Symmetrized copy of `m`, or an error if `m` is not square or is further
/// than `rel_tol · max(1, ‖m‖_F)` from Hermitian.
pub(crate) fn checked_hermitian(
    m: &ComplexMatrix,
    rel_tol: f64,
) -> Result<ComplexMatrix, LinalgError> {
    require_square(m)?;
    let defect = m.hermitian_defect();
    if defect > rel_tol * m.frobenius_norm().max(1.0) {
        return Err(LinalgError::NotHermitian { defect });
    }
    Ok(m.hermitian_part())
}

/// Eigenvalues of `(m + m*)/2`, ascending. Never fails; used where the
/// caller only needs spectral extremes and `m` is Hermitian by construction.
pub fn hermitian_spectrum(m: &ComplexMatrix) -> Vec<f64> {
    debug_assert!(m.is_square());
    eigen::jacobi(&m.hermitian_part()).0.eigenvalues
}

pub fn lambda_min(m: &ComplexMatrix) -> f64 {
    hermitian_spectrum(m)[0]
}

pub fn lambda_max(m: &ComplexMatrix) -> f64 {
    *hermitian_spectrum(m).last().expect("non-empty spectrum")
}

/// True iff `λ_min((M + M*)/2) ≥ −tol`.
pub fn psd_check(m: &ComplexMatrix, tol: f64) -> Result<bool, LinalgError> {
    require_square(m)?;
    Ok(lambda_min(m) >= -tol)
}

/// Gram matrix of the smaller side: `M*M` or `MM*`, same nonzero spectrum.
fn small_gram(m: &ComplexMatrix) -> ComplexMatrix {
    if m.rows() < m.cols() {
        m.outer_gram()
    } else {
        m.gram()
    }
}

/// Largest singular value, `sqrt(λ_max(M*M))`.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    lambda_max(&small_gram(m)).max(0.0).sqrt()
}

/// Smallest singular value `sqrt(λ_min(M*M))`, clamped at zero.
///
/// Computed on `M*M` (size `cols`), so a wide matrix has `σ_min = 0`.
pub fn sigma_min(m: &ComplexMatrix) -> f64 {
    lambda_min(&m.gram()).max(0.0).sqrt()
}

/// Inverse of a Hermitian matrix through its spectral decomposition.
pub fn hermitian_inverse(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix, LinalgError> {
    let spec = hermitian_eigen(m)?;
    if spec.min() <= tol {
        return Err(LinalgError::Singular {
            lambda_min: spec.min(),
        });
    }
    Ok(spec.reconstruct_with(|l| 1.0 / l))
}

/// Positive square root of a PSD matrix; eigenvalues in `[−tol, 0)` are
/// clamped to zero.
pub fn psd_sqrt(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix, LinalgError> {
    let spec = hermitian_eigen(m)?;
    if spec.min() < -tol {
        return Err(LinalgError::NotPsd {
            lambda_min: spec.min(),
        });
    }
    Ok(spec.reconstruct_with(|l| l.max(0.0).sqrt()))
}
