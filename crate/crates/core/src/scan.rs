//! Parallel scans over index ranges. Results never depend on scheduling:
//! witnesses are the minimum matching index and counters are summed.

use rayon::prelude::*;

pub(crate) fn first_index(n: u64, pred: impl Fn(u64) -> bool + Sync + Send) -> Option<u64> {
    (0..n).into_par_iter().find_first(|&i| pred(i))
}

pub(crate) fn tally<const K: usize>(n: u64, f: impl Fn(u64) -> [u64; K] + Sync + Send) -> [u64; K] {
    (0..n)
        .into_par_iter()
        .fold(
            || [0u64; K],
            |mut acc, i| {
                let hit = f(i);
                for k in 0..K {
                    acc[k] += hit[k];
                }
                acc
            },
        )
        .reduce(
            || [0u64; K],
            |mut a, b| {
                for k in 0..K {
                    a[k] += b[k];
                }
                a
            },
        )
}

pub(crate) fn count(n: u64, pred: impl Fn(u64) -> bool + Sync + Send) -> u64 {
    tally(n, |i| [pred(i) as u64])[0]
}
