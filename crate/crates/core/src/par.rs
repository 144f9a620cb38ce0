//! Data-parallel map with a sequential fallback.
//!
//! Everything routed through here is a pure function of the index, so the
//! collected output is identical whether it runs on one thread, a rayon
//! pool of any size, or the sequential fallback (crate feature `parallel`
//! disabled).

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..len).map(f).collect()
}
