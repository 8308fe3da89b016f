//! Thin execution helpers: rayon when the `parallel` feature is on, plain
//! iterators otherwise. Output order always matches input order, so results
//! are identical in both modes and for any worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn map_ordered<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub(crate) fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Tally per-sample outcomes into an accumulator. `merge` must be commutative
/// and associative (integer counts), which keeps the reduction deterministic
/// regardless of how rayon splits the range.
pub(crate) fn fold_samples<A, F, M>(n: u64, init: fn() -> A, step: F, merge: M) -> A
where
    A: Send,
    F: Fn(A, u64) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .fold(init, |acc, i| step(acc, i))
            .reduce(init, merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = &merge;
        (0..n).fold(init(), |acc, i| step(acc, i))
    }
}
