//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs on the
//! current rayon pool; without it, every mode runs sequentially. Results are
//! always returned in input order, so callers get identical output under any
//! worker count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `f` applied to every index, results in index order.
    #[cfg(feature = "parallel")]
    pub fn map_range<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => range.map(f).collect(),
            Execution::Parallel => range.into_par_iter().map(f).collect(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    pub fn map_range<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        F: Fn(usize) -> R,
    {
        range.map(f).collect()
    }

    /// Like [`Execution::map_range`] but each worker gets a scratch value
    /// from `init`, reused across the indices it processes.
    #[cfg(feature = "parallel")]
    pub fn map_range_with<S, R, I, F>(self, range: Range<usize>, init: I, f: F) -> Vec<R>
    where
        R: Send,
        I: Fn() -> S + Sync + Send,
        F: Fn(&mut S, usize) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => {
                let mut scratch = init();
                range.map(|i| f(&mut scratch, i)).collect()
            }
            Execution::Parallel => range
                .into_par_iter()
                .map_init(&init, |s, i| f(s, i))
                .collect(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    pub fn map_range_with<S, R, I, F>(self, range: Range<usize>, init: I, f: F) -> Vec<R>
    where
        I: Fn() -> S,
        F: Fn(&mut S, usize) -> R,
    {
        let mut scratch = init();
        range.map(|i| f(&mut scratch, i)).collect()
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (0 = rayon default).
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R>(_threads: usize, f: impl FnOnce() -> R) -> R {
    f()
}

/// Number of workers the parallel mode would use right now.
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
