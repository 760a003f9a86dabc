use thiserror::Error;

use crate::linalg::LinalgError;
use crate::module::ModuleShape;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid module shape d={d}, n={n}: both must be at least 1")]
    InvalidShape { d: usize, n: usize },
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch {
        left: ModuleShape,
        right: ModuleShape,
    },
    #[error("representation is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    RepresentationSize {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("a frame system needs at least one vector")]
    EmptyFrame,
    #[error("not a frame: optimal lower bound {lower:e} ≤ tolerance {tol:e}")]
    NotAFrame { lower: f64, tol: f64 },
    #[error("η must be non-negative, got {0}")]
    NegativeEta(f64),
    #[error("μ must be non-negative, got {0}")]
    NegativeMu(f64),
    #[error("ρ = {rho} exceeds σ_min(T) = {sigma_min}")]
    RhoTooLarge { rho: f64, sigma_min: f64 },
    #[error("ξ must be non-zero")]
    XiZero,
    #[error("S is singular: λ_min = {lambda_min:e}")]
    SingularS { lambda_min: f64 },
    #[error("S ≠ K + ξI: residual {residual:e}")]
    InconsistentDecomposition { residual: f64 },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("truncation {truncation} exceeds module rank {rank}")]
    TruncationTooLarge { truncation: usize, rank: usize },
    #[error("ξ must be positive, got {0}")]
    NonPositiveXi(f64),
    #[error("basis index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("multiplicity at index {index} must be at least 1")]
    ZeroMultiplicity { index: usize },
    #[error("certificates describe different operators: residual {residual:e}")]
    NotSameOperator { residual: f64 },
    #[error("partition value {value} at position {position} out of range for {families} families")]
    InvalidPartition {
        position: usize,
        value: usize,
        families: usize,
    },
    #[error("{count} partitions exceed the cap of {cap}")]
    TooManyPartitions { count: u128, cap: u64 },
    #[error("need between 1 and {max} families, got {got}")]
    FamilyCount { got: usize, max: usize },
    #[error("scenario needs an even number of vectors, got {0}")]
    OddN(usize),
    #[error("scenario profiles must have limit 0 and positive amplitude: {0}")]
    NonzeroLimit(String),
}
