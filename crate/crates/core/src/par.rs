//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the loops run on rayon; without it
//! the same code paths run sequentially. Outputs are collected in index
//! order and sums use fixed-size chunking with an ordered combine, so
//! results are bit-identical regardless of thread count or scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk size for deterministic sums. Fixed so the reduction tree does not
/// depend on the number of worker threads.
const SUM_CHUNK: usize = 4096;

/// Map `f` over `0..n`, collecting results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
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

/// Map `f` over the items of a slice, collecting results in index order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
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

/// Deterministic sum: fixed-size chunks summed independently, partials
/// combined in chunk order.
pub fn sum(xs: &[f64]) -> f64 {
    if xs.len() <= SUM_CHUNK {
        return xs.iter().sum();
    }
    let n_chunks = xs.len().div_ceil(SUM_CHUNK);
    let partials = map_indexed(n_chunks, |c| {
        let lo = c * SUM_CHUNK;
        let hi = ((c + 1) * SUM_CHUNK).min(xs.len());
        xs[lo..hi].iter().sum::<f64>()
    });
    partials.iter().sum()
}

/// Deterministic dot product with the same chunking scheme as [`sum`].
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    if a.len() <= SUM_CHUNK {
        return a.iter().zip(b).map(|(x, y)| x * y).sum();
    }
    let n_chunks = a.len().div_ceil(SUM_CHUNK);
    let partials = map_indexed(n_chunks, |c| {
        let lo = c * SUM_CHUNK;
        let hi = ((c + 1) * SUM_CHUNK).min(a.len());
        a[lo..hi]
            .iter()
            .zip(&b[lo..hi])
            .map(|(x, y)| x * y)
            .sum::<f64>()
    });
    partials.iter().sum()
}
