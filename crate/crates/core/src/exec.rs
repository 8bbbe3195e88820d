//! Chunked evaluation of index ranges.
//!
//! Ranges are always cut into the same fixed-size chunks and the per-chunk
//! results come back in index order, so a caller that reduces them left to
//! right gets bit-identical output whether the chunks ran on one thread or on
//! many.

use std::ops::Range;
use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

const SEQ: u8 = 0;
const PAR: u8 = 1;

static MODE: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { PAR } else { SEQ });

impl Execution {
    /// The process-wide mode used by library routines.
    pub fn current() -> Self {
        match MODE.load(Ordering::Relaxed) {
            #[cfg(feature = "parallel")]
            PAR => Execution::Parallel,
            _ => Execution::Sequential,
        }
    }

    pub fn set_current(mode: Execution) {
        let v = match mode {
            Execution::Sequential => SEQ,
            #[cfg(feature = "parallel")]
            Execution::Parallel => PAR,
        };
        MODE.store(v, Ordering::Relaxed);
    }
}

/// Splits `range` into chunks of `chunk` indices (last one shorter).
pub fn chunks(range: Range<u64>, chunk: u64) -> Vec<Range<u64>> {
    assert!(chunk > 0);
    let mut out = Vec::new();
    let mut lo = range.start;
    while lo < range.end {
        let hi = (lo + chunk).min(range.end);
        out.push(lo..hi);
        lo = hi;
    }
    out
}

/// Applies `f` to each chunk of `range`; results are in chunk order.
pub fn map_chunks<T, F>(mode: Execution, range: Range<u64>, chunk: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    let parts = chunks(range, chunk);
    map_items(mode, parts, f)
}

/// Applies `f` to each item; results are in input order.
pub fn map_items<I, T, F>(mode: Execution, items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    match mode {
        Execution::Sequential => items.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map(f).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunking_covers_range() {
        let c = chunks(3..20, 5);
        assert_eq!(c, vec![3..8, 8..13, 13..18, 18..20]);
        assert!(chunks(5..5, 3).is_empty());
    }

    #[test]
    fn order_is_preserved() {
        let seq = map_chunks(Execution::Sequential, 0..1000, 7, |r| r.start);
        let cur = map_chunks(Execution::current(), 0..1000, 7, |r| r.start);
        assert_eq!(seq, cur);
    }
}
