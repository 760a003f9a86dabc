//! Holds the `acceptance` test target; see `tests/acceptance.rs`.
//!
//! Kept as its own package so it runs after every other test target in the
//! workspace and a failing criterion cannot hide their results.
