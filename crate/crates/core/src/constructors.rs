//! Concrete compact-tight frames: profile-scaled orthonormal bases,
//! repetition frames and eigen-profile operators, together with the
//! certificates `S = K + ξI` they carry.
//!
//! A finite truncation cannot tell a compact `K` from a merely bounded one.
//! Compactness is therefore recorded as metadata: a certificate names the
//! scalar profile of `S`'s spectrum, and `K` is compact exactly when that
//! profile's limit equals the declared `ξ` (so `K`'s eigenvalues tend to 0).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::FrameSystem;
use crate::linalg;
use crate::module::{standard_basis, ModuleOperator, ModuleShape};
use crate::profile::ScalarProfile;

/// Certificate that a frame operator splits as `S = K + ξI`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompactTightCert {
    pub xi: f64,
    /// Spectral profile of `S` along `permutation`; `None` for finite-rank `K`.
    pub profile: Option<ScalarProfile>,
    /// `permutation[k − 1]` is the basis index carrying `l_k`.
    pub permutation: Vec<usize>,
    /// Basis indices spanned by the frame; `S = K + ξI` holds there.
    pub span: Vec<usize>,
    pub k: ModuleOperator,
}

impl CompactTightCert {
    /// Limit of `K`'s eigenvalue profile: `profile.limit() − ξ`, or 0 when
    /// `K` has finite rank.
    pub fn k_limit(&self) -> f64 {
        self.profile.map_or(0.0, |p| p.limit() - self.xi)
    }

    /// `K`'s declared eigenvalue profile vanishes at infinity.
    pub fn is_compact(&self, tol: f64) -> bool {
        self.k_limit().abs() <= tol
    }

    /// `K + ξ·P_span`, the operator this certificate claims equals `S`.
    pub fn claimed_operator(&self) -> ModuleOperator {
        let shape = self.k.shape();
        let mut weights = vec![0.0; shape.n];
        for &i in &self.span {
            weights[i] = self.xi;
        }
        let shift = ModuleOperator::block_diagonal(shape, &weights).expect("n weights");
        self.k.add(&shift).expect("same shape")
    }

    /// `‖S − K − ξ·P_span‖_F`.
    pub fn residual(&self, s: &ModuleOperator) -> Result<f64> {
        Ok(s.sub(&self.claimed_operator())?.mat().frobenius_norm())
    }

    /// Largest deviation of `K`'s diagonal from `l_k − ξ` at the permuted
    /// basis directions; `None` for finite-rank certificates.
    pub fn profile_residual(&self) -> Option<f64> {
        let p = self.profile?;
        let d = self.k.shape().d;
        let mut worst: f64 = 0.0;
        for (pos, &idx) in self.permutation.iter().enumerate() {
            let expected = p.eval(pos + 1) - self.xi;
            for r in 0..d {
                let i = idx * d + r;
                worst = worst.max((self.k.mat()[(i, i)].re - expected).abs());
            }
        }
        Some(worst)
    }

    /// Number of eigenvalues of `K` with modulus above `tol`.
    pub fn k_rank(&self, tol: f64) -> usize {
        linalg::hermitian_spectrum(self.k.mat())
            .iter()
            .filter(|l| l.abs() > tol)
            .count()
    }

    /// The same operator re-declared with shift `xi`: `K' = K + (ξ − xi)·P_span`.
    pub fn redeclare(&self, xi: f64) -> Self {
        let shape = self.k.shape();
        let mut weights = vec![0.0; shape.n];
        for &i in &self.span {
            weights[i] = self.xi - xi;
        }
        let delta = ModuleOperator::block_diagonal(shape, &weights).expect("n weights");
        Self {
            xi,
            k: self.k.add(&delta).expect("same shape"),
            ..self.clone()
        }
    }
}

/// `{√l_k · e_k}_{k=1..N}` for the first `truncation` standard basis vectors,
/// with `K = Σ_k (l_k − ξ)⟨·, e_k⟩e_k`.
pub fn profile_frame(
    profile: &ScalarProfile,
    shape: ModuleShape,
    truncation: usize,
) -> Result<(FrameSystem, CompactTightCert)> {
    if profile.xi() <= 0.0 {
        return Err(Error::NonPositiveXi(profile.xi()));
    }
    if truncation > shape.n {
        return Err(Error::TruncationTooLarge {
            truncation,
            rank: shape.n,
        });
    }
    if truncation == 0 {
        return Err(Error::EmptyFrame);
    }
    let basis = standard_basis(shape);
    let vectors = (1..=truncation)
        .map(|k| basis[k - 1].scale(profile.eval(k).sqrt()))
        .collect();
    let frame = FrameSystem::new(shape, vectors)?;

    let mut weights = vec![0.0; shape.n];
    for (k, w) in weights.iter_mut().enumerate().take(truncation) {
        *w = profile.decay(k + 1);
    }
    let cert = CompactTightCert {
        xi: profile.xi(),
        profile: Some(*profile),
        permutation: (0..truncation).collect(),
        span: (0..truncation).collect(),
        k: ModuleOperator::block_diagonal(shape, &weights)?,
    };
    Ok((frame, cert))
}

/// `T = Σ α_k⟨·, e_k⟩e_k`, diagonal in the standard basis.
pub fn eigenprofile_operator(alphas: &[f64], shape: ModuleShape) -> Result<ModuleOperator> {
    ModuleOperator::block_diagonal(shape, alphas)
}

/// Orthonormal basis with `e_i` repeated `multiplicities[i]` times in total
/// (indices are 0-based). `S = I + Σ (θ_i − 1)⟨·, e_i⟩e_i`.
pub fn repetition_frame(
    shape: ModuleShape,
    multiplicities: &BTreeMap<usize, usize>,
) -> Result<(FrameSystem, CompactTightCert)> {
    for (&index, &theta) in multiplicities {
        if index >= shape.n {
            return Err(Error::IndexOutOfRange {
                index,
                rank: shape.n,
            });
        }
        if theta == 0 {
            return Err(Error::ZeroMultiplicity { index });
        }
    }
    let basis = standard_basis(shape);
    let mut vectors = Vec::new();
    let mut weights = vec![0.0; shape.n];
    for (i, e) in basis.iter().enumerate() {
        let theta = multiplicities.get(&i).copied().unwrap_or(1);
        vectors.extend(std::iter::repeat_n(e.clone(), theta));
        weights[i] = (theta - 1) as f64;
    }
    let frame = FrameSystem::new(shape, vectors)?;
    let cert = CompactTightCert {
        xi: 1.0,
        profile: None,
        permutation: multiplicities
            .iter()
            .filter(|(_, &t)| t > 1)
            .map(|(&i, _)| i)
            .collect(),
        span: (0..shape.n).collect(),
        k: ModuleOperator::block_diagonal(shape, &weights)?,
    };
    Ok((frame, cert))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Uniqueness {
    Equal,
    DistinctXi {
        xi: [f64; 2],
        k_limits: [f64; 2],
        explanation: String,
    },
}

/// Decides whether two certificates of the same operator coincide.
///
/// Both describe `S`, so `K₂ − K₁ = (ξ₁ − ξ₂)·I`. The right side has the
/// constant eigenvalue profile `ξ₁ − ξ₂`, which vanishes at infinity only
/// if the shifts agree; the decision is made on the declared limits.
pub fn representation_unique(
    first: &CompactTightCert,
    second: &CompactTightCert,
    tol: f64,
) -> Result<Uniqueness> {
    let a = first.claimed_operator();
    let b = second.claimed_operator();
    let residual = a.sub(&b)?.mat().frobenius_norm();
    if residual > tol * a.mat().frobenius_norm().max(1.0) {
        return Err(Error::NotSameOperator { residual });
    }
    if (first.xi - second.xi).abs() <= tol
        && first.k.mat().distance(second.k.mat()) <= tol * first.k.mat().frobenius_norm().max(1.0)
    {
        return Ok(Uniqueness::Equal);
    }
    let k_limits = [first.k_limit(), second.k_limit()];
    let offenders: Vec<String> = k_limits
        .iter()
        .enumerate()
        .filter(|(_, l)| l.abs() > tol)
        .map(|(i, l)| format!("certificate {} has K-profile limit {l} ≠ 0", i + 1))
        .collect();
    let explanation = format!(
        "K₂ − K₁ = ({}) · I has a non-vanishing constant profile, so at most one K is compact; {}",
        first.xi - second.xi,
        if offenders.is_empty() {
            "declared limits disagree".to_string()
        } else {
            offenders.join("; ")
        }
    );
    Ok(Uniqueness::DistinctXi {
        xi: [first.xi, second.xi],
        k_limits,
        explanation,
    })
}

/// `K` built directly from the profile, for comparing against constructors.
pub fn profile_operator(
    profile: &ScalarProfile,
    shape: ModuleShape,
    truncation: usize,
) -> Result<ModuleOperator> {
    if truncation > shape.n {
        return Err(Error::TruncationTooLarge {
            truncation,
            rank: shape.n,
        });
    }
    let weights: Vec<f64> = (1..=shape.n)
        .map(|k| {
            if k <= truncation {
                profile.decay(k)
            } else {
                0.0
            }
        })
        .collect();
    ModuleOperator::block_diagonal(shape, &weights)
}
