//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature the work is spread over the rayon pool when
//! the caller asks for it; without the feature, or with `parallel = false`,
//! it runs on the calling thread. Both paths return results in input order.

/// `(0..len).map(f)` in input order.
pub fn map_indices<T, F>(len: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..len).map(f).collect()
}

/// `items.iter().map(f)` in input order.
pub fn map_slice<I, T, F>(items: &[I], parallel: bool, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    map_indices(items.len(), parallel, |k| f(&items[k]))
}

/// Whether the crate was built with the rayon backend.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
