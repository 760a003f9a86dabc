//! Closed-form scalar sequences `l_k → ξ`, the finite stand-in for the
//! spectrum of a compact perturbation of `ξ·I`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileKind {
    /// `l_k = ξ`.
    Constant,
    /// `l_k = ξ + c·exp(−k²/2)`.
    Gaussian,
    /// `l_k = ξ + c·rᵏ`, `0 < r < 1`.
    Geometric { r: f64 },
    /// `l_k = ξ + c·k^(−p)`, `p > 0`.
    Power { p: f64 },
}

/// Sequence `k ↦ l_k` (for `k ≥ 1`) with declared limit `ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarProfile {
    #[serde(flatten)]
    kind: ProfileKind,
    xi: f64,
    c: f64,
}

impl ScalarProfile {
    pub fn new(kind: ProfileKind, xi: f64, c: f64) -> Result<Self> {
        if !xi.is_finite() || !c.is_finite() {
            return Err(Error::InvalidProfile("ξ and c must be finite".into()));
        }
        if c < 0.0 {
            return Err(Error::InvalidProfile(format!(
                "amplitude c must be non-negative, got {c}"
            )));
        }
        match kind {
            ProfileKind::Geometric { r } if !(r > 0.0 && r < 1.0) => {
                return Err(Error::InvalidProfile(format!(
                    "geometric ratio must lie in (0, 1), got {r}"
                )));
            }
            ProfileKind::Power { p } if !(p > 0.0 && p.is_finite()) => {
                return Err(Error::InvalidProfile(format!(
                    "power exponent must be positive, got {p}"
                )));
            }
            _ => {}
        }
        Ok(Self { kind, xi, c })
    }

    pub fn constant(xi: f64) -> Self {
        Self::new(ProfileKind::Constant, xi, 0.0).expect("finite constant")
    }

    pub fn gaussian(xi: f64, c: f64) -> Result<Self> {
        Self::new(ProfileKind::Gaussian, xi, c)
    }

    pub fn geometric(xi: f64, c: f64, r: f64) -> Result<Self> {
        Self::new(ProfileKind::Geometric { r }, xi, c)
    }

    pub fn power(xi: f64, c: f64, p: f64) -> Result<Self> {
        Self::new(ProfileKind::Power { p }, xi, c)
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn amplitude(&self) -> f64 {
        self.c
    }

    /// Declared limit of `l_k`.
    pub fn limit(&self) -> f64 {
        self.xi
    }

    /// `l_k − ξ`, computed directly so it does not cancel against `ξ`.
    pub fn decay(&self, k: usize) -> f64 {
        assert!(k >= 1, "profiles are indexed from 1");
        let k = k as f64;
        match self.kind {
            ProfileKind::Constant => 0.0,
            ProfileKind::Gaussian => self.c * (-k * k / 2.0).exp(),
            ProfileKind::Geometric { r } => self.c * r.powf(k),
            ProfileKind::Power { p } => self.c * k.powf(-p),
        }
    }

    /// `ln(l_k − ξ)`; finite and strictly decreasing for `c > 0` even where
    /// [`decay`](Self::decay) underflows.
    pub fn log_decay(&self, k: usize) -> f64 {
        assert!(k >= 1, "profiles are indexed from 1");
        let k = k as f64;
        let ln_c = self.c.ln();
        match self.kind {
            ProfileKind::Constant => f64::NEG_INFINITY,
            ProfileKind::Gaussian => ln_c - k * k / 2.0,
            ProfileKind::Geometric { r } => ln_c + k * r.ln(),
            ProfileKind::Power { p } => ln_c - p * k.ln(),
        }
    }

    /// `l_k`.
    pub fn eval(&self, k: usize) -> f64 {
        self.xi + self.decay(k)
    }

    /// `sup_{k ≥ 1} l_k`, attained at `k = 1` since every kind is non-increasing.
    pub fn sup(&self) -> f64 {
        self.eval(1)
    }

    /// `min_{k ≤ n} l_k = l_n`.
    pub fn prefix_min(&self, n: usize) -> f64 {
        self.eval(n)
    }

    /// `max_{k ≤ n} l_k = l_1`.
    pub fn prefix_max(&self, _n: usize) -> f64 {
        self.eval(1)
    }

    /// Same sequence re-declared with limit `xi`; amplitude and shape kept,
    /// so `l'_k − xi = l_k − self.xi`.
    pub fn with_xi(&self, xi: f64) -> Self {
        Self { xi, ..*self }
    }
}

impl fmt::Display for ScalarProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ProfileKind::Constant => write!(f, "constant(ξ={})", self.xi),
            ProfileKind::Gaussian => write!(f, "gaussian(ξ={}, c={})", self.xi, self.c),
            ProfileKind::Geometric { r } => {
                write!(f, "geometric(ξ={}, c={}, r={})", self.xi, self.c, r)
            }
            ProfileKind::Power { p } => write!(f, "power(ξ={}, c={}, p={})", self.xi, self.c, p),
        }
    }
}
