//! Data-parallel helpers with a sequential fallback.
//!
//! Work is split into index-addressed chunks and results are returned in
//! chunk order, so callers that fold them sequentially get identical output
//! regardless of the execution mode or worker count.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise sequential.
    #[default]
    Parallel,
}

pub(crate) fn map_indexed<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..len).into_par_iter().map(f).collect()
        }
        _ => (0..len).map(f).collect(),
    }
}

/// Chunked cover of the nonempty subsets `1..2^n` of an `n`-vertex set.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SubsetChunks {
    end: u64,
    chunk: u64,
}

impl SubsetChunks {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n < 64);
        let end = 1u64 << n;
        let chunk = 1u64 << n.min(12);
        SubsetChunks { end, chunk }
    }

    pub(crate) fn count(&self) -> usize {
        self.end.div_ceil(self.chunk) as usize
    }

    pub(crate) fn range(&self, i: usize) -> std::ops::Range<u64> {
        let lo = (i as u64 * self.chunk).max(1);
        let hi = ((i as u64 + 1) * self.chunk).min(self.end);
        lo..hi
    }
}
