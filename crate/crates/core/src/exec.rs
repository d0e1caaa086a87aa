//! Data-parallel range combinators with a sequential fallback.
//!
//! With the `parallel` feature (default) these fan out over rayon; without
//! it they run inline. Results are identical either way: maps keep index
//! order and witness searches return the first hit in range order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_range<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<T, F>(n: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    map_range_seq(n, f)
}

pub(crate) fn map_range_seq<T, F>(n: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn find_map_first_range<T, F>(n: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_map_first_range<T, F>(n: u64, f: F) -> Option<T>
where
    F: Fn(u64) -> Option<T>,
{
    find_map_first_range_seq(n, f)
}

pub(crate) fn find_map_first_range_seq<T, F>(n: u64, mut f: F) -> Option<T>
where
    F: FnMut(u64) -> Option<T>,
{
    (0..n).find_map(&mut f)
}
