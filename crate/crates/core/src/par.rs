//! Deterministic parallel minimum: the winner is the smallest `(key, index)`
//! no matter how work is scheduled.

use alloc::vec::Vec;

#[cfg(feature = "std")]
use rayon::prelude::*;

#[cfg(feature = "std")]
pub(crate) fn min_by_key<T, K, R, F>(items: &[T], f: F) -> Option<(usize, K, R)>
where
    T: Sync,
    K: Ord + Send,
    R: Send,
    F: Fn(usize, &T) -> Option<(K, R)> + Sync + Send,
{
    items
        .par_iter()
        .enumerate()
        .filter_map(|(i, t)| f(i, t).map(|(k, r)| (i, k, r)))
        .min_by(|a, b| (&a.1, a.0).cmp(&(&b.1, b.0)))
}

#[cfg(not(feature = "std"))]
pub(crate) fn min_by_key<T, K, R, F>(items: &[T], f: F) -> Option<(usize, K, R)>
where
    K: Ord,
    F: Fn(usize, &T) -> Option<(K, R)>,
{
    items
        .iter()
        .enumerate()
        .filter_map(|(i, t)| f(i, t).map(|(k, r)| (i, k, r)))
        .min_by(|a, b| (&a.1, a.0).cmp(&(&b.1, b.0)))
}

/// Maps every item, keeping order.
#[cfg(feature = "std")]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "std"))]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}
