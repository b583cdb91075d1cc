//! Execution strategy for the data-parallel kernels.
//!
//! Every hot loop in the crate (codeword enumeration, Gram accumulation,
//! batch bentness tests, triple scans) goes through [`Exec`]. With the
//! `parallel` feature the work is split across the rayon pool; without it,
//! or with [`Exec::Sequential`], the same closures run on the calling thread.
//! Results never depend on the choice: every reduction used here is an
//! associative, commutative integer merge.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
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
    /// True when work will actually be spread over worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `range`, preserving order.
    pub fn map<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Folds each index of `range` into a per-worker accumulator and merges
    /// the accumulators with `merge`.
    pub fn fold<A, Id, F, M>(self, range: Range<usize>, identity: Id, fold: F, merge: M) -> A
    where
        A: Send,
        Id: Fn() -> A + Sync + Send,
        F: Fn(A, usize) -> A + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return range
                .into_par_iter()
                .fold(&identity, &fold)
                .reduce(&identity, &merge);
        }
        let _ = &merge;
        range.fold(identity(), fold)
    }

    /// Number of segments to split a contiguous workload into.
    pub(crate) fn segments(self) -> usize {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (rayon::current_num_threads() * 4).max(1);
        }
        1
    }
}

/// Caps the global worker pool. Has no effect without the `parallel` feature,
/// and fails if the pool was already initialised.
pub fn set_thread_count(threads: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        return rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .map_err(|e| e.to_string());
    }
    #[allow(unreachable_code)]
    {
        let _ = threads;
        Ok(())
    }
}

/// Splits `0..total` into at most `parts` contiguous, non-empty ranges.
pub(crate) fn split_range(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts as u64).clamp(1, total.max(1));
    let step = total.div_ceil(parts);
    (0..parts)
        .map(|p| (p * step).min(total)..((p + 1) * step).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}
