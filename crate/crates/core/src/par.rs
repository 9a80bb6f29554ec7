//! Data-parallel helpers. With the `parallel` feature, work is spread over the
//! current rayon pool; otherwise, or inside a single-thread pool, it runs
//! sequentially. Results are always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of worker threads the helpers will use from the calling context.
pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Runs `f` with `jobs` worker threads (`0` means all cores). Without the
/// `parallel` feature this just calls `f`.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if jobs > 0 {
            builder = builder.num_threads(jobs);
        }
        match builder.build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        f()
    }
}

/// `(0..len).map(f).collect()`, in parallel when available.
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if current_threads() > 1 {
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

/// `items.iter().map(f).collect()`, in parallel when available.
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if current_threads() > 1 {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Flat-maps every index in `0..len` into a vector, concatenated in index order.
pub fn flat_map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Vec<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if current_threads() > 1 {
        return (0..len).into_par_iter().flat_map_iter(f).collect();
    }
    (0..len).flat_map(f).collect()
}
