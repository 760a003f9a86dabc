//! Frames and Bessel sequences in Hilbert C*-modules over `M_d(ℂ)`.
//!
//! The module `H = Aⁿ` over `A = M_d(ℂ)` is realized concretely: vectors are
//! `d × (n·d)` complex matrices, adjointable operators are `(n·d) × (n·d)`
//! matrices acting on the right. On top of that the crate provides frame
//! operators and optimal bounds, shift decompositions `S = T + ξI` with the
//! bounds they imply, compact-tight constructions with certificates,
//! canonical duals, and exhaustive weaving analysis.
//!
//! Enumeration and sampling run on rayon when the `parallel` feature is on
//! (the default); see [`exec::Execution`].

pub mod constructors;
pub mod decomposition;
pub mod error;
pub mod exec;
pub mod frames;
pub mod linalg;
pub mod module;
pub mod profile;
pub mod sample;
pub mod weaving;

pub use error::{Error, Result};
pub use exec::Execution;
pub use frames::{BoundsReport, FrameSystem};
pub use linalg::{ComplexMatrix, SpectralResult};
pub use module::{ModuleOperator, ModuleShape, ModuleVector};
pub use profile::{ProfileKind, ScalarProfile};
