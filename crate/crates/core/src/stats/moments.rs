//! Moments of squared pairwise feature distances over the connected and the
//! unconnected pair populations.
//!
//! The unconnected population has `O(N^2)` members and is never enumerated:
//! its first two moment sums are the all-pairs sums (closed-form Gram
//! identities) minus the sums over edges.

use ndarray::{linalg::general_mat_mul, s, Array1, Array2, ArrayView2, Axis};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::numeric::{chunked_sum, chunked_sums, squared_distance, CompensatedSum};

const ROW_BLOCK: usize = 1024;

/// Count, mean and sample variance (divisor `n - 1`) of squared distances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceMoments {
    pub n: u64,
    pub mean: f64,
    pub var: f64,
}

/// Sums of `d(i, j)` and `d(i, j)^2` over all unordered pairs `i < j`,
/// where `d(i, j) = ||x_i - x_j||^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMomentSums {
    pub n: u64,
    pub s1: f64,
    pub s2: f64,
}

/// Column means with compensated accumulation.
pub(crate) fn column_means(x: ArrayView2<'_, f64>) -> Array1<f64> {
    let n = x.nrows();
    let f = x.ncols();
    let mut acc = vec![CompensatedSum::new(); f];
    for row in x.rows() {
        for (a, &v) in acc.iter_mut().zip(row) {
            a.add(v);
        }
    }
    acc.iter().map(|a| a.value() / n as f64).collect()
}

/// All-pairs moment sums in `O(N F min(N, F))` time and `O(F^2 + B N)`
/// memory.
///
/// Rows are centred first (distances are translation invariant). With
/// `r_i = ||x_i - mean||^2` and `G` the Gram matrix of the centred rows:
///
/// * `S1 = N sum r_i`
/// * `S2 = N sum r_i^2 + (sum r_i)^2 + 2 ||G||_F^2`
///
/// Every term is non-negative, so neither sum suffers cancellation.
/// `||G||_F^2` is taken from the `F x F` matrix `Xc^T Xc` when `F <= N`, and
/// from row blocks of `Xc Xc^T` otherwise.
pub fn all_pairs_moment_sums(x: ArrayView2<'_, f64>) -> Result<PairMomentSums> {
    let n = x.nrows();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let f = x.ncols();
    let mean = column_means(x);

    let mut r_sum = CompensatedSum::new();
    let mut r2_sum = CompensatedSum::new();
    for row in x.rows() {
        let r: f64 = row
            .iter()
            .zip(mean.iter())
            .map(|(v, m)| (v - m) * (v - m))
            .sum();
        r_sum.add(r);
        r2_sum.add(r * r);
    }

    let gram_sq = if f <= n {
        let mut gram = Array2::<f64>::zeros((f, f));
        let mut block = Array2::<f64>::zeros((ROW_BLOCK.min(n), f));
        for start in (0..n).step_by(ROW_BLOCK) {
            let end = (start + ROW_BLOCK).min(n);
            let mut b = block.slice_mut(s![..end - start, ..]);
            b.assign(&x.slice(s![start..end, ..]));
            b -= &mean;
            general_mat_mul(1.0, &b.t(), &b, 1.0, &mut gram);
        }
        gram.iter().map(|g| g * g).collect::<CompensatedSum>().value()
    } else {
        let mut centered = x.to_owned();
        centered -= &mean;
        let mut acc = CompensatedSum::new();
        let mut out = Array2::<f64>::zeros((ROW_BLOCK.min(n), n));
        for start in (0..n).step_by(ROW_BLOCK) {
            let end = (start + ROW_BLOCK).min(n);
            let mut o = out.slice_mut(s![..end - start, ..]);
            general_mat_mul(
                1.0,
                &centered.slice(s![start..end, ..]),
                &centered.t(),
                0.0,
                &mut o,
            );
            for g in o.iter() {
                acc.add(g * g);
            }
        }
        acc.value()
    };

    let nf = n as f64;
    let r_total = r_sum.value();
    Ok(PairMomentSums {
        n: (n as u64) * (n as u64 - 1) / 2,
        s1: nf * r_total,
        s2: nf * r2_sum.value() + r_total * r_total + 2.0 * gram_sq,
    })
}

fn edge_distance(g: &AttributedGraph, x: ArrayView2<'_, f64>, e: usize) -> f64 {
    let (u, v) = g.edges()[e];
    let xu = x.row(u);
    let xv = x.row(v);
    match (xu.as_slice(), xv.as_slice()) {
        (Some(a), Some(b)) => squared_distance(a, b),
        _ => xu.iter().zip(xv.iter()).map(|(a, b)| (a - b) * (a - b)).sum(),
    }
}

fn check_rows(g: &AttributedGraph, x: ArrayView2<'_, f64>) -> Result<()> {
    if x.nrows() != g.num_nodes() {
        return Err(Error::DimensionMismatch {
            what: "signal rows",
            expected: g.num_nodes(),
            actual: x.nrows(),
        });
    }
    Ok(())
}

/// Exact moments over the edge set (two-pass variance).
pub fn connected_moments(g: &AttributedGraph, x: ArrayView2<'_, f64>) -> Result<DistanceMoments> {
    check_rows(g, x)?;
    let m = g.num_edges();
    if m < 2 {
        return Err(Error::degenerate(format!(
            "connected moments need at least 2 edges, graph has {m}"
        )));
    }
    let mean = chunked_sum(m, |e| edge_distance(g, x, e)) / m as f64;
    let ss = chunked_sum(m, |e| {
        let d = edge_distance(g, x, e) - mean;
        d * d
    });
    Ok(DistanceMoments {
        n: m as u64,
        mean,
        var: ss / (m as f64 - 1.0),
    })
}

/// Raw `(sum d, sum d^2)` over edges.
pub fn edge_moment_sums(g: &AttributedGraph, x: ArrayView2<'_, f64>) -> Result<[f64; 2]> {
    check_rows(g, x)?;
    Ok(chunked_sums(g.num_edges(), |e| {
        let d = edge_distance(g, x, e);
        [d, d * d]
    }))
}

/// Moments over node pairs that are not edges, from all-pairs sums minus
/// edge sums.
pub fn unconnected_moments(
    g: &AttributedGraph,
    x: ArrayView2<'_, f64>,
    all: &PairMomentSums,
) -> Result<DistanceMoments> {
    let n2 = g.complement_stats().pair_count_unconnected;
    if n2 < 2 {
        return Err(Error::degenerate(format!(
            "unconnected moments need at least 2 non-adjacent pairs, graph has {n2}"
        )));
    }
    let [s1c, s2c] = edge_moment_sums(g, x)?;
    let s1 = all.s1 - s1c;
    let s2 = all.s2 - s2c;
    let nf = n2 as f64;
    let mean = (s1 / nf).max(0.0);
    let mut var = (s2 - mean * s1) / (nf - 1.0);
    if var < 0.0 {
        if -var <= 1e-9 * mean * mean {
            var = 0.0;
        } else {
            return Err(Error::Consistency(format!(
                "negative unconnected-pair variance {var:e} (mean {mean:e})"
            )));
        }
    }
    Ok(DistanceMoments { n: n2, mean, var })
}

/// Label disagreement counts over connected and unconnected pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelCounts {
    /// Edges whose endpoints carry different labels.
    pub k1: u64,
    pub n1: u64,
    /// Non-adjacent pairs with different labels.
    pub k2: u64,
    pub n2: u64,
}

impl LabelCounts {
    pub fn from_graph(g: &AttributedGraph) -> Self {
        let labels = g.labels();
        let k1 = g
            .edges()
            .iter()
            .filter(|&&(u, v)| labels[u] != labels[v])
            .count() as u64;
        let n = g.num_nodes() as u128;
        let same: u128 = g.class_sizes().iter().map(|&c| (c as u128) * (c as u128)).sum();
        let differing = ((n * n - same) / 2) as u64;
        let stats = g.complement_stats();
        LabelCounts {
            k1,
            n1: stats.pair_count_connected,
            k2: differing - k1,
            n2: stats.pair_count_unconnected,
        }
    }

    pub fn p1(&self) -> f64 {
        self.k1 as f64 / self.n1 as f64
    }

    pub fn p2(&self) -> f64 {
        self.k2 as f64 / self.n2 as f64
    }
}

/// Sum of squared distances to the column mean; used by callers that need
/// `trace(Cov(X))` without a covariance matrix.
pub fn centered_sum_of_squares(x: ArrayView2<'_, f64>) -> f64 {
    let mean = column_means(x);
    x.axis_iter(Axis(0))
        .map(|row| {
            row.iter()
                .zip(mean.iter())
                .map(|(v, m)| (v - m) * (v - m))
                .sum::<f64>()
        })
        .collect::<CompensatedSum>()
        .value()
}
