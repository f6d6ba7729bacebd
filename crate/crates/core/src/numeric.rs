//! Compensated summation and the deterministic chunked reduction used by
//! every parallel edge/row loop in the crate.
//!
//! Work is split into fixed chunks of [`REDUCTION_CHUNK`] indices. Each chunk
//! is summed sequentially and the per-chunk partials are combined left to
//! right, so results are bit-identical for any number of worker threads.

use rayon::prelude::*;

pub const REDUCTION_CHUNK: usize = 4096;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Sums `K` quantities produced per index over `0..n`.
pub fn chunked_sums<const K: usize, F>(n: usize, term: F) -> [f64; K]
where
    F: Fn(usize) -> [f64; K] + Sync,
{
    let num_chunks = n.div_ceil(REDUCTION_CHUNK);
    let partials: Vec<[f64; K]> = (0..num_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * REDUCTION_CHUNK;
            let hi = (lo + REDUCTION_CHUNK).min(n);
            let mut acc = [CompensatedSum::new(); K];
            for i in lo..hi {
                let t = term(i);
                for k in 0..K {
                    acc[k].add(t[k]);
                }
            }
            acc.map(|a| a.value())
        })
        .collect();
    let mut total = [CompensatedSum::new(); K];
    for p in &partials {
        for k in 0..K {
            total[k].add(p[k]);
        }
    }
    total.map(|a| a.value())
}

pub fn chunked_sum<F>(n: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    chunked_sums::<1, _>(n, |i| [term(i)])[0]
}

#[inline]
pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

pub fn relative_error(actual: f64, expected: f64) -> f64 {
    let scale = expected.abs().max(f64::MIN_POSITIVE);
    (actual - expected).abs() / scale
}
