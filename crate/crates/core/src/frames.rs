//! Finite frame systems, their synthesis/analysis/frame operators, optimal
//! bounds, perturbation distance and canonical duals.
//!
//! A finite family is always Bessel: the upper bound is `λ_max(S)`, which is
//! finite. It is a frame exactly when `λ_min(S) > 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::module::{inner_product, ModuleOperator, ModuleShape, ModuleVector};

/// Ordered family `{f_k}` with its frame operator computed at construction.
///
/// Zero and duplicate vectors are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSystem {
    shape: ModuleShape,
    vectors: Vec<ModuleVector>,
    frame_op: ModuleOperator,
}

/// Optimal constants `A`, `B` with `A⟨f,f⟩ ≤ Σ⟨f,f_k⟩⟨f_k,f⟩ ≤ B⟨f,f⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub lower: f64,
    pub upper: f64,
    pub is_frame: bool,
    pub is_bessel: bool,
}

impl BoundsReport {
    /// `A = B` within `tol` (and a frame).
    pub fn is_tight(&self, tol: f64) -> bool {
        self.is_frame && self.upper - self.lower <= tol
    }
}

impl FrameSystem {
    pub fn new(shape: ModuleShape, vectors: Vec<ModuleVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptyFrame);
        }
        let mut mat = ComplexMatrix::zeros(shape.rep_cols(), shape.rep_cols());
        for v in &vectors {
            if v.shape() != shape {
                return Err(Error::ShapeMismatch {
                    left: shape,
                    right: v.shape(),
                });
            }
            mat = &mat + &v.rep().gram();
        }
        let frame_op = ModuleOperator::new(shape, mat)?;
        Ok(Self {
            shape,
            vectors,
            frame_op,
        })
    }

    pub fn shape(&self) -> ModuleShape {
        self.shape
    }

    pub fn vectors(&self) -> &[ModuleVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `S = Σ_k ⟨·, f_k⟩ f_k`, represented as `Σ_k rep(f_k)*·rep(f_k)`.
    pub fn frame_operator(&self) -> &ModuleOperator {
        &self.frame_op
    }

    /// Every vector multiplied by the real scalar `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let vectors = self.vectors.iter().map(|v| v.scale(s)).collect();
        Self::new(self.shape, vectors).expect("same shape")
    }

    /// Analysis operator `f ↦ {⟨f, f_k⟩}_k`.
    pub fn analysis(&self, f: &ModuleVector) -> Result<Vec<ComplexMatrix>> {
        self.vectors.iter().map(|fk| inner_product(f, fk)).collect()
    }

    /// Synthesis operator `{ξ_k} ↦ Σ_k ξ_k · f_k` (left action).
    pub fn synthesis(&self, coeffs: &[ComplexMatrix]) -> Result<ModuleVector> {
        if coeffs.len() != self.vectors.len() {
            return Err(Error::LengthMismatch {
                expected: self.vectors.len(),
                got: coeffs.len(),
            });
        }
        let mut acc = ModuleVector::zero(self.shape);
        for (c, fk) in coeffs.iter().zip(&self.vectors) {
            acc = acc.add(&fk.left_mul(c)?)?;
        }
        Ok(acc)
    }

    /// `(n·d) × (N·d)` matrix `[rep(f_1)* | … | rep(f_N)*]`; its operator
    /// norm is `‖T_F‖`.
    pub fn stacked_adjoint(&self) -> ComplexMatrix {
        let d = self.shape.d;
        let mut out = ComplexMatrix::zeros(self.shape.rep_cols(), self.len() * d);
        for (k, v) in self.vectors.iter().enumerate() {
            out.set_block(0, k * d, &v.rep().adjoint());
        }
        out
    }

    /// `A = max(λ_min(S), 0)` and `B = λ_max(S)`.
    pub fn optimal_bounds(&self, tol: f64) -> BoundsReport {
        let spectrum = linalg::hermitian_spectrum(self.frame_op.mat());
        let lower = spectrum[0].max(0.0);
        let upper = spectrum[spectrum.len() - 1].max(lower);
        BoundsReport {
            lower,
            upper,
            is_frame: lower > tol,
            is_bessel: upper.is_finite(),
        }
    }

    /// Canonical dual `{S⁻¹ f_k}`: `rep(f̃_k) = rep(f_k)·mat(S)⁻¹`.
    pub fn dual_frame(&self, tol: f64) -> Result<Self> {
        let lower = linalg::lambda_min(self.frame_op.mat());
        if lower <= tol {
            return Err(Error::NotAFrame {
                lower: lower.max(0.0),
                tol,
            });
        }
        let inv = linalg::hermitian_inverse(self.frame_op.mat(), tol)?;
        let vectors = self
            .vectors
            .iter()
            .map(|v| ModuleVector::new(self.shape, v.rep() * &inv))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.shape, vectors)
    }
}

/// `μ = ‖T_F − T_G‖`, the smallest constant making `G` a `μ`-perturbation of `F`.
///
/// The stacked difference `D` is `(n·d) × (N·d)`; `σ_max(D)` comes from the
/// smaller of `D·D*` and `D*·D`.
pub fn perturbation_distance(f: &FrameSystem, g: &FrameSystem) -> Result<f64> {
    if f.shape != g.shape {
        return Err(Error::ShapeMismatch {
            left: f.shape,
            right: g.shape,
        });
    }
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            got: g.len(),
        });
    }
    let diff = &f.stacked_adjoint() - &g.stacked_adjoint();
    Ok(linalg::operator_norm(&diff))
}
