//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Convergence threshold on `off(A) / ‖M‖_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Eigen-decomposition `M = V · diag(λ) · V*` with `λ` ascending.
#[derive(Clone, Debug)]
pub struct SpectralResult {
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors stored as columns; unitary.
    pub eigenvectors: ComplexMatrix,
}

impl SpectralResult {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `V · diag(f(λ)) · V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * weights[k])
                .sum()
        })
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Runs cyclic Jacobi on an already-Hermitian matrix. Returns the result and
/// whether the off-diagonal criterion was met within [`MAX_SWEEPS`].
pub(crate) fn jacobi(m: &ComplexMatrix) -> (SpectralResult, bool) {
    let n = m.rows();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();
    let threshold = OFF_DIAGONAL_TOL * scale;

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    (
        SpectralResult {
            eigenvalues,
            eigenvectors,
        },
        converged,
    )
}

/// One unitary rotation annihilating `a[p][q]`.
///
/// The phase of `a[p][q]` is first moved onto column `q`, which leaves a real
/// symmetric 2×2 pivot handled by the classical Rutishauser formulas.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let modulus = apq.norm();
    if modulus == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / modulus;

    let theta = (aqq - app) / (2.0 * modulus);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    // U restricted to (p, q): [[cs, sn], [-sn·φ̄, cs·φ̄]] with φ = phase.
    let u_pp = Complex64::new(cs, 0.0);
    let u_pq = Complex64::new(sn, 0.0);
    let u_qp = -phase.conj() * sn;
    let u_qq = phase.conj() * cs;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * modulus, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * modulus, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Full spectrum of a Hermitian matrix.
///
/// The input is symmetrized to `(M + M*)/2` first; asymmetry above
/// `1e-9 · max(1, ‖M‖_F)` is reported as [`LinalgError::NotHermitian`].
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<SpectralResult, LinalgError> {
    let h = super::checked_hermitian(m, super::HERMITIAN_TOL)?;
    let (result, converged) = jacobi(&h);
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS });
    }
    Ok(result)
}
