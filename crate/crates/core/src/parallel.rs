//! Deterministic chunked reductions.
//!
//! Sums are accumulated per fixed-size chunk and the chunk sums are folded
//! with a pairwise tree, so the result does not depend on thread count or
//! scheduling: the `parallel` build and the sequential fallback produce
//! bitwise-identical values.

const CHUNK: usize = 512;

fn pairwise(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise(&xs[..mid]) + pairwise(&xs[mid..])
}

fn chunk_sum<F: Fn(usize) -> f64>(f: &F, lo: usize, hi: usize) -> f64 {
    let mut s = 0.0;
    for i in lo..hi {
        s += f(i);
    }
    s
}

/// Σ_{i<n} f(i), sequential reference path.
pub fn sum_indexed_seq<F: Fn(usize) -> f64 + Sync>(n: usize, f: F) -> f64 {
    let nchunks = n.div_ceil(CHUNK);
    let sums: Vec<f64> = (0..nchunks)
        .map(|c| chunk_sum(&f, c * CHUNK, ((c + 1) * CHUNK).min(n)))
        .collect();
    pairwise(&sums)
}

/// Σ_{i<n} f(i), rayon path. Same chunking and fold tree as the sequential path.
#[cfg(feature = "parallel")]
pub fn sum_indexed_par<F: Fn(usize) -> f64 + Sync>(n: usize, f: F) -> f64 {
    use rayon::prelude::*;
    let nchunks = n.div_ceil(CHUNK);
    let sums: Vec<f64> = (0..nchunks)
        .into_par_iter()
        .map(|c| chunk_sum(&f, c * CHUNK, ((c + 1) * CHUNK).min(n)))
        .collect();
    pairwise(&sums)
}

/// Σ_{i<n} f(i) on the default execution path for this build.
pub fn sum_indexed<F: Fn(usize) -> f64 + Sync>(n: usize, f: F) -> f64 {
    #[cfg(feature = "parallel")]
    {
        sum_indexed_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sum_indexed_seq(n, f)
    }
}

/// Tabulate f(i) for i < n, sequential path.
pub fn tabulate_seq<F: Fn(usize) -> f64 + Sync>(n: usize, f: F) -> Vec<f64> {
    (0..n).map(f).collect()
}

/// Tabulate f(i) for i < n, rayon path.
#[cfg(feature = "parallel")]
pub fn tabulate_par<F: Fn(usize) -> f64 + Sync>(n: usize, f: F) -> Vec<f64> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(|i| f(i)).collect()
}

/// Tabulate f(i) for i < n on the default execution path.
pub fn tabulate<F: Fn(usize) -> f64 + Sync>(n: usize, f: F) -> Vec<f64> {
    #[cfg(feature = "parallel")]
    {
        tabulate_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        tabulate_seq(n, f)
    }
}

/// Independent per-index work collected in index order.
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(|i| f(i)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
