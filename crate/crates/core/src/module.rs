//! The Hilbert C*-module `H = Aⁿ` over `A = M_d(ℂ)`.
//!
//! A vector `f = (f_1, …, f_n)` is stored as the `d × (n·d)` row-block matrix
//! `[f_1 | f_2 | … | f_n]`. The module is a left `A`-module, so:
//!
//! * the inner product is `⟨f, g⟩ = rep(f) · rep(g)*`, linear in the first slot;
//! * an adjointable operator is an `(n·d) × (n·d)` matrix acting by right
//!   multiplication, `rep(Tf) = rep(f) · mat(T)`, which commutes with the left
//!   action automatically;
//! * the adjoint is the conjugate transpose.
//!
//! Positivity of an operator is decided by PSD-ness of its matrix:
//! `⟨Tf, f⟩ = rep(f) · mat(T) · rep(f)*`, and `X·M·X* ⪰ 0` for every
//! `d × (n·d)` matrix `X` iff `M ⪰ 0` (rank-one rows give one direction, a PSD
//! factorization the other).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{self, ComplexMatrix};
use crate::sample;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleShape {
    /// Matrix size of the algebra, `A = M_d(ℂ)`.
    pub d: usize,
    /// Rank of the module, `H = Aⁿ`.
    pub n: usize,
}

impl ModuleShape {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidShape { d, n });
        }
        Ok(Self { d, n })
    }

    /// Width of a vector representation, `n·d`.
    pub fn rep_cols(&self) -> usize {
        self.n * self.d
    }

    fn require_eq(&self, other: &ModuleShape) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={}, n={})", self.d, self.n)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector {
    shape: ModuleShape,
    rep: ComplexMatrix,
}

impl ModuleVector {
    pub fn new(shape: ModuleShape, rep: ComplexMatrix) -> Result<Self> {
        if rep.rows() != shape.d || rep.cols() != shape.rep_cols() {
            return Err(Error::RepresentationSize {
                rows: rep.rows(),
                cols: rep.cols(),
                expected_rows: shape.d,
                expected_cols: shape.rep_cols(),
            });
        }
        Ok(Self { shape, rep })
    }

    pub fn zero(shape: ModuleShape) -> Self {
        Self {
            shape,
            rep: ComplexMatrix::zeros(shape.d, shape.rep_cols()),
        }
    }

    /// Vector whose `i`-th coordinate is `a` and all others zero.
    pub fn from_block(shape: ModuleShape, i: usize, a: &ComplexMatrix) -> Result<Self> {
        if i >= shape.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: shape.n,
            });
        }
        if a.rows() != shape.d || a.cols() != shape.d {
            return Err(Error::RepresentationSize {
                rows: a.rows(),
                cols: a.cols(),
                expected_rows: shape.d,
                expected_cols: shape.d,
            });
        }
        let mut rep = ComplexMatrix::zeros(shape.d, shape.rep_cols());
        rep.set_block(0, i * shape.d, a);
        Ok(Self { shape, rep })
    }

    pub fn shape(&self) -> ModuleShape {
        self.shape
    }

    pub fn rep(&self) -> &ComplexMatrix {
        &self.rep
    }

    /// Coordinate `f_i ∈ A`.
    pub fn block(&self, i: usize) -> ComplexMatrix {
        let d = self.shape.d;
        self.rep.block(0, i * d, d, d)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            shape: self.shape,
            rep: self.rep.scale(s),
        }
    }

    /// Left module action `a · f`.
    pub fn left_mul(&self, a: &ComplexMatrix) -> Result<Self> {
        if a.rows() != self.shape.d || a.cols() != self.shape.d {
            return Err(Error::RepresentationSize {
                rows: a.rows(),
                cols: a.cols(),
                expected_rows: self.shape.d,
                expected_cols: self.shape.d,
            });
        }
        Ok(Self {
            shape: self.shape,
            rep: a * &self.rep,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.shape.require_eq(&other.shape)?;
        Ok(Self {
            shape: self.shape,
            rep: &self.rep + &other.rep,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.shape.require_eq(&other.shape)?;
        Ok(Self {
            shape: self.shape,
            rep: &self.rep - &other.rep,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleOperator {
    shape: ModuleShape,
    mat: ComplexMatrix,
}

impl ModuleOperator {
    pub fn new(shape: ModuleShape, mat: ComplexMatrix) -> Result<Self> {
        let size = shape.rep_cols();
        if mat.rows() != size || mat.cols() != size {
            return Err(Error::RepresentationSize {
                rows: mat.rows(),
                cols: mat.cols(),
                expected_rows: size,
                expected_cols: size,
            });
        }
        Ok(Self { shape, mat })
    }

    pub fn identity(shape: ModuleShape) -> Self {
        Self::scalar(shape, 1.0)
    }

    pub fn zero(shape: ModuleShape) -> Self {
        Self::scalar(shape, 0.0)
    }

    /// `ξ·I`.
    pub fn scalar(shape: ModuleShape, xi: f64) -> Self {
        Self {
            shape,
            mat: ComplexMatrix::from_diag(&vec![xi; shape.rep_cols()]),
        }
    }

    /// `Σ_k w_k ⟨·, e_k⟩ e_k` for the standard basis; each weight fills a
    /// `d × d` identity block.
    pub fn block_diagonal(shape: ModuleShape, weights: &[f64]) -> Result<Self> {
        if weights.len() != shape.n {
            return Err(Error::LengthMismatch {
                expected: shape.n,
                got: weights.len(),
            });
        }
        let diag: Vec<f64> = weights
            .iter()
            .flat_map(|&w| std::iter::repeat_n(w, shape.d))
            .collect();
        Ok(Self {
            shape,
            mat: ComplexMatrix::from_diag(&diag),
        })
    }

    pub fn shape(&self) -> ModuleShape {
        self.shape
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> ComplexMatrix {
        self.mat
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.shape.require_eq(&other.shape)?;
        Ok(Self {
            shape: self.shape,
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.shape.require_eq(&other.shape)?;
        Ok(Self {
            shape: self.shape,
            mat: &self.mat - &other.mat,
        })
    }

    /// Composition `self ∘ other` (apply `other` first).
    ///
    /// Under right multiplication, `rep((S∘T)f) = rep(f)·mat(T)·mat(S)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.shape.require_eq(&other.shape)?;
        Ok(Self {
            shape: self.shape,
            mat: &other.mat * &self.mat,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            shape: self.shape,
            mat: self.mat.scale(s),
        }
    }

    pub fn add_scalar(&self, xi: f64) -> Self {
        Self {
            shape: self.shape,
            mat: self.mat.add_diagonal(xi),
        }
    }

    /// `‖T‖`, the largest singular value of the representing matrix.
    pub fn norm(&self) -> f64 {
        linalg::operator_norm(&self.mat)
    }
}

/// `⟨f, g⟩ = rep(f)·rep(g)*`, a `d × d` algebra element.
pub fn inner_product(f: &ModuleVector, g: &ModuleVector) -> Result<ComplexMatrix> {
    f.shape.require_eq(&g.shape)?;
    Ok(&f.rep * &g.rep.adjoint())
}

/// `‖f‖ = ‖⟨f, f⟩‖^{1/2}`, which equals the operator norm of `rep(f)`.
pub fn module_norm(f: &ModuleVector) -> f64 {
    linalg::operator_norm(&f.rep)
}

/// `e_1, …, e_n` with `1_A` in one block.
pub fn standard_basis(shape: ModuleShape) -> Vec<ModuleVector> {
    let one = ComplexMatrix::identity(shape.d);
    (0..shape.n)
        .map(|i| ModuleVector::from_block(shape, i, &one).expect("index within rank"))
        .collect()
}

/// `rep(Tf) = rep(f)·mat(T)`.
pub fn apply(t: &ModuleOperator, f: &ModuleVector) -> Result<ModuleVector> {
    t.shape.require_eq(&f.shape)?;
    Ok(ModuleVector {
        shape: f.shape,
        rep: &f.rep * &t.mat,
    })
}

pub fn adjoint(t: &ModuleOperator) -> ModuleOperator {
    ModuleOperator {
        shape: t.shape,
        mat: t.mat.adjoint(),
    }
}

/// `⟨Tf, f⟩ ⪰ 0` for all `f`, decided as `mat(T) ⪰ 0` within `tol`.
pub fn operator_positive(t: &ModuleOperator, tol: f64) -> bool {
    linalg::lambda_min(&t.mat) >= -tol
}

/// Worst observed violation of `⟨Tx, Tx⟩ ≤ ‖T‖²⟨x, x⟩`.
#[derive(Clone, Debug)]
pub struct ProbeOutcome {
    /// `max_x λ_max(⟨Tx, Tx⟩ − ‖T‖²⟨x, x⟩)`; non-positive when the inequality holds.
    pub worst: f64,
    pub witness: ModuleVector,
    pub samples: usize,
}

/// Samples `x` from a seeded stream and reports the largest eigenvalue of
/// `⟨Tx, Tx⟩ − ‖T‖²⟨x, x⟩` seen.
pub fn cauchy_schwarz_probe(
    t: &ModuleOperator,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> ProbeOutcome {
    assert!(samples >= 1, "at least one sample");
    let shape = t.shape;
    let norm_sq = t.norm().powi(2);
    let violation = |i: u64| {
        let x = sample::module_vector(&mut sample::stream(seed, i), shape);
        let tx = apply(t, &x).expect("same shape");
        let lhs = inner_product(&tx, &tx).expect("same shape");
        let rhs = inner_product(&x, &x).expect("same shape").scale(norm_sq);
        (linalg::lambda_max(&(&lhs - &rhs)), i)
    };
    let (worst, index) = exec.map_reduce(
        0..samples as u64,
        (f64::NEG_INFINITY, u64::MAX),
        violation,
        |a, b| {
            if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                a
            } else {
                b
            }
        },
    );
    ProbeOutcome {
        worst,
        witness: sample::module_vector(&mut sample::stream(seed, index), shape),
        samples,
    }
}
