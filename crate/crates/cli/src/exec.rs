//! Thread-pool executor for the library's stream fan-out.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use pairlaw_core::exec::{Sequential, StreamExecutor};

/// Runs streams on up to `threads` scoped worker threads. Results come back
/// in stream order, so output does not depend on the thread count.
#[derive(Debug, Clone, Copy)]
pub struct Threaded {
    threads: usize,
}

impl Threaded {
    pub fn new(threads: usize) -> Self {
        Self {
            threads: threads.max(1),
        }
    }

    /// One worker per available core.
    pub fn from_machine() -> Self {
        Self::new(thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn threads(&self) -> usize {
        self.threads
    }
}

impl StreamExecutor for Threaded {
    fn run<T, F>(&self, streams: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        let workers = self.threads.min(streams);
        if workers <= 1 {
            return Sequential.run(streams, f);
        }
        let next = AtomicUsize::new(0);
        let mut slots: Vec<Option<T>> = (0..streams).map(|_| None).collect();
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    scope.spawn(|| {
                        let mut done = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= streams {
                                break done;
                            }
                            done.push((i, f(i)));
                        }
                    })
                })
                .collect();
            for h in handles {
                for (i, v) in h.join().expect("stream worker panicked") {
                    slots[i] = Some(v);
                }
            }
        });
        slots
            .into_iter()
            .map(|v| v.expect("every stream ran"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_matches_sequential() {
        let f = |i: usize| i * i + 1;
        let want = Sequential.run(37, f);
        for threads in [1, 2, 5, 64] {
            assert_eq!(Threaded::new(threads).run(37, f), want);
        }
        assert!(Threaded::new(4).run(0, f).is_empty());
    }
}
