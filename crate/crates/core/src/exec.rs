//! Deterministic fan-out of independent random streams.
//!
//! Simulations split their work into a fixed number of streams, each seeded
//! from the master seed and its stream index. An executor only decides *where*
//! the streams run; results are always collected in stream order, so the
//! reduction is identical for any executor.

use alloc::vec::Vec;

/// Number of streams simulations split into unless told otherwise.
pub const DEFAULT_STREAMS: usize = 64;

pub trait StreamExecutor {
    /// Runs `f(0), …, f(streams - 1)` and returns the results in index order.
    fn run<T, F>(&self, streams: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync;
}

/// Runs every stream on the calling thread.
#[derive(Debug, Default, Clone, Copy)]
pub struct Sequential;

impl StreamExecutor for Sequential {
    fn run<T, F>(&self, streams: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (0..streams).map(f).collect()
    }
}

/// Number of items assigned to `stream` when `total` items are split over
/// `streams` streams; the first `total % streams` streams take one extra.
pub fn stream_share(total: u64, streams: usize, stream: usize) -> u64 {
    let s = streams as u64;
    total / s + u64::from((stream as u64) < total % s)
}
