//! Range partitioning with order-preserving merge.
//!
//! Work is split into `parts` contiguous chunks of `[lo, hi)`; each chunk runs
//! on its own scoped thread and the per-chunk results come back in ascending
//! chunk order. With `parts == 1` everything runs on the calling thread.

use std::ops::Range;

/// Contiguous, near-equal chunks covering `lo..hi`. Empty chunks are dropped.
pub fn chunks(lo: u64, hi: u64, parts: usize) -> Vec<Range<u64>> {
    if hi <= lo {
        return Vec::new();
    }
    let parts = parts.max(1) as u64;
    let len = hi - lo;
    let step = len.div_ceil(parts);
    (0..parts)
        .map(|i| (lo + i * step).min(hi)..(lo + (i + 1) * step).min(hi))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Maps `f` over the chunks of `lo..hi`, returning results in chunk order.
pub fn map_chunks<T, F>(lo: u64, hi: u64, parts: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let ranges = chunks(lo, hi, parts);
    if ranges.len() <= 1 {
        return ranges.into_iter().map(&f).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let f = &f;
                scope.spawn(move || f(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("partition worker panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range() {
        let c = chunks(3, 20, 4);
        assert_eq!(c.first().unwrap().start, 3);
        assert_eq!(c.last().unwrap().end, 20);
        for w in c.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
        assert!(chunks(5, 5, 3).is_empty());
        assert_eq!(chunks(0, 2, 8).len(), 2);
    }

    #[test]
    fn order_is_preserved() {
        let sums = map_chunks(0, 1000, 7, |r| r.sum::<u64>());
        assert_eq!(sums.iter().sum::<u64>(), 999 * 1000 / 2);
        let firsts = map_chunks(0, 100, 4, |r| r.start);
        assert_eq!(firsts, vec![0, 25, 50, 75]);
    }
}
