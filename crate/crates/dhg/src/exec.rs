//! Execution backend: rayon data-parallel maps with a sequential fallback.
//!
//! With the `parallel` feature (default) the batch entry points fan out over
//! rayon's current thread pool; without it they run sequentially. Outputs
//! are collected in input order either way, so results are bit-identical
//! across backends and worker counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
#[cfg(feature = "parallel")]
pub fn map_collect<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    items.par_iter().map(f).collect()
}

/// Maps `f` over `items`, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F: Fn(&T) -> U>(items: &[T], f: F) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Maps `f` over an index range, preserving order.
#[cfg(feature = "parallel")]
pub fn map_indices<U: Send, F: Fn(usize) -> U + Sync + Send>(n: usize, f: F) -> Vec<U> {
    (0..n).into_par_iter().map(f).collect()
}

/// Maps `f` over an index range, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map_indices<U, F: Fn(usize) -> U>(n: usize, f: F) -> Vec<U> {
    (0..n).map(f).collect()
}

/// Sequential variant, always available; benches compare it against the
/// parallel path and the determinism suite asserts bit-equality.
pub fn map_indices_sequential<U, F: Fn(usize) -> U>(n: usize, f: F) -> Vec<U> {
    (0..n).map(f).collect()
}
