//! Test-only oracles, independent of the Jacobi solver.
#![allow(dead_code)]

use cstar_frames::linalg::{Complex64, ComplexMatrix};

/// Eigenvalues of a 2×2 Hermitian matrix from the quadratic formula.
pub fn roots_2x2(m: &ComplexMatrix) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)].norm();
    let mid = (a + d) / 2.0;
    let rad = (((a - d) / 2.0).powi(2) + b * b).sqrt();
    [mid - rad, mid + rad]
}

fn det3(m: &ComplexMatrix) -> Complex64 {
    let e = |i, j| m[(i, j)];
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
        - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

/// Eigenvalues of a 3×3 Hermitian matrix: trigonometric roots of the
/// characteristic cubic, polished by Newton steps on the same cubic.
pub fn roots_3x3(m: &ComplexMatrix) -> [f64; 3] {
    let tr = (m[(0, 0)] + m[(1, 1)] + m[(2, 2)]).re;
    let minors = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)])
        + (m[(0, 0)] * m[(2, 2)] - m[(0, 2)] * m[(2, 0)])
        + (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)]);
    let det = det3(m).re;
    // λ³ + aλ² + bλ + c
    let (a, b, c) = (-tr, minors.re, -det);
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let mut roots = if p.abs() < 1e-300 {
        [shift; 3]
    } else {
        let amp = 2.0 * (-p / 3.0).sqrt();
        let arg = ((3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let tau = std::f64::consts::TAU;
        [
            shift + amp * phi.cos(),
            shift + amp * (phi - tau / 3.0).cos(),
            shift + amp * (phi - 2.0 * tau / 3.0).cos(),
        ]
    };
    let poly = |x: f64| ((x + a) * x + b) * x + c;
    let dpoly = |x: f64| (3.0 * x + 2.0 * a) * x + b;
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let dp = dpoly(*r);
            if dp.abs() > 1e-12 {
                *r -= poly(*r) / dp;
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Determinant by LU with partial pivoting.
pub fn lu_det(m: &ComplexMatrix) -> Complex64 {
    let n = m.rows();
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)]).collect())
        .collect();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= factor * v;
            }
        }
    }
    det
}
