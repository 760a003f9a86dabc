//! Sequential or data-parallel evaluation of index-space reductions.
//!
//! With the `parallel` feature disabled, [`Execution::Parallel`] runs the
//! sequential path.

use std::ops::Range;

/// Environment variable capping the number of enumeration workers.
pub const THREADS_ENV: &str = "CSTAR_FRAMES_THREADS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon global pool.
    #[default]
    Parallel,
    /// Dedicated pool with exactly this many workers.
    Threads(usize),
}

impl Execution {
    /// Reads [`THREADS_ENV`]; unset gives the global pool, a positive integer a
    /// dedicated pool of that size. Anything else is an error message.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(THREADS_ENV) {
            Err(_) => Ok(Execution::Parallel),
            Ok(raw) => match raw.trim().parse::<usize>() {
                Ok(0) | Err(_) => Err(format!(
                    "{THREADS_ENV} must be a positive integer, got {raw:?}"
                )),
                Ok(1) => Ok(Execution::Sequential),
                Ok(n) => Ok(Execution::Threads(n)),
            },
        }
    }

    /// Maps every index in `range` and folds the results with `reduce`.
    ///
    /// `reduce` must be associative and commutative (up to the caller's
    /// tie-breaking) for the result to be schedule-independent.
    pub fn map_reduce<T, M, R>(self, range: Range<u64>, identity: T, map: M, reduce: R) -> T
    where
        T: Clone + Send + Sync,
        M: Fn(u64) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => sequential(range, identity, map, reduce),
            #[cfg(feature = "parallel")]
            Execution::Parallel => parallel(range, identity, &map, &reduce),
            #[cfg(feature = "parallel")]
            Execution::Threads(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .expect("worker pool");
                pool.install(|| parallel(range, identity, &map, &reduce))
            }
            #[cfg(not(feature = "parallel"))]
            _ => sequential(range, identity, map, reduce),
        }
    }
}

fn sequential<T, M, R>(range: Range<u64>, identity: T, map: M, reduce: R) -> T
where
    M: Fn(u64) -> T,
    R: Fn(T, T) -> T,
{
    range.fold(identity, |acc, i| reduce(acc, map(i)))
}

#[cfg(feature = "parallel")]
fn parallel<T, M, R>(range: Range<u64>, identity: T, map: &M, reduce: &R) -> T
where
    T: Clone + Send + Sync,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range
        .into_par_iter()
        .map(map)
        .reduce(|| identity.clone(), reduce)
}
