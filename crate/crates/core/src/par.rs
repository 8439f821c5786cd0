//! Data-parallel map with a sequential fallback. Results are collected in
//! input order, so output never depends on worker count.

#[cfg(feature = "parallel")]
pub fn map_indexed<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Configure the global worker count; a no-op in sequential builds or when a
/// pool already exists.
#[cfg(feature = "parallel")]
pub fn configure_jobs(jobs: usize) {
    if jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
pub fn configure_jobs(_jobs: usize) {}
