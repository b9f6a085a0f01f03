//! Execution strategy for the data-parallel inner loops (triple scans, box
//! enumerations, pairwise products).
//!
//! Every routine here is deterministic: results come back in index order no
//! matter how the work was scheduled. Without the `parallel` feature,
//! [`Exec::Parallel`] quietly runs sequentially.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Whether work will actually be spread over a thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `f` applied to every index, collected in index order.
    pub fn map<U, F>(self, range: Range<usize>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Concatenation of `f(i)` over all indices, in index order.
    pub fn flat_map<U, F>(self, range: Range<usize>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> Vec<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().flat_map_iter(f).collect();
        }
        range.flat_map(f).collect()
    }

    /// The `Some` result with the smallest index.
    pub fn find_map_first<U, F>(self, range: Range<usize>, f: F) -> Option<U>
    where
        U: Send,
        F: Fn(usize) -> Option<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().find_map_first(f);
        }
        range.into_iter().find_map(f)
    }

    pub fn all<F>(self, range: Range<usize>, pred: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().all(pred);
        }
        range.into_iter().all(pred)
    }

    pub fn count<F>(self, range: Range<usize>, pred: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().filter(|&i| pred(i)).count();
        }
        range.filter(|&i| pred(i)).count()
    }
}

/// Decodes `index` into a vector of `len` digits, each in `[-radius, radius]`,
/// with the first coordinate most significant. Index 0 is `(-r, ..., -r)`.
pub fn box_point(index: usize, len: usize, radius: i64) -> Vec<i64> {
    let side = (2 * radius + 1) as usize;
    let mut out = vec![0i64; len];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = (rest % side) as i64 - radius;
        rest /= side;
    }
    out
}

/// Number of points in the box `[-radius, radius]^len`, or `None` on overflow.
pub fn box_size(len: usize, radius: i64) -> Option<usize> {
    let side = (2 * radius + 1) as usize;
    side.checked_pow(len as u32)
}
