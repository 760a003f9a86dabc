//! Seeded random inputs for probes and property checks.
//!
//! Each sample `i` draws from its own ChaCha stream derived from
//! `(seed, i)`, so results do not depend on evaluation order or thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frames::FrameSystem;
use crate::linalg::ComplexMatrix;
use crate::module::{ModuleShape, ModuleVector};

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for sample `index` of a seeded batch.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Entries with real and imaginary parts uniform in `[−1, 1]`.
pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
    })
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    matrix(rng, n, n).hermitian_part()
}

/// `G*·G` for a random square `G`.
pub fn psd<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    matrix(rng, n, n).gram()
}

pub fn module_vector<R: Rng + ?Sized>(rng: &mut R, shape: ModuleShape) -> ModuleVector {
    ModuleVector::new(shape, matrix(rng, shape.d, shape.rep_cols()))
        .expect("shape-consistent sample")
}

pub fn frame<R: Rng + ?Sized>(rng: &mut R, shape: ModuleShape, count: usize) -> FrameSystem {
    let vectors = (0..count).map(|_| module_vector(rng, shape)).collect();
    FrameSystem::new(shape, vectors).expect("non-empty sample frame")
}
