//! Smoothness measures of node signals on a graph: normalized total
//! variation, Dirichlet energies on the graph and its complement, the
//! normalized smoothness value, and the classic homophily ratios.

use ndarray::{Array1, ArrayView2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, GraphOperator};
use crate::numeric::{chunked_sums, squared_distance};
use crate::stats::centered_sum_of_squares;

/// Relative size below which a negative complement energy is treated as
/// rounding noise.
const COMPLEMENT_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessValues {
    pub ntv: f64,
    /// Mean squared distance per ordered connected pair, `E_D / (2|E|)`.
    pub e_n_graph: f64,
    /// Same over ordered non-adjacent pairs, `E_D^C / (N(N-1) - 2|E|)`.
    pub e_n_complement: f64,
    pub nsv: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomophilyMetrics {
    pub h_node: f64,
    pub h_edge: f64,
    pub h_class: f64,
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

/// `||X - A X||_F^2 / (2 ||X||_F^2)` for an affinity operator `A`.
///
/// Rows of `A X` are formed one at a time; no second `N x F` matrix is
/// allocated.
pub fn ntv(op: &GraphOperator, x: ArrayView2<'_, f64>) -> Result<f64> {
    if op.kind().is_laplacian() {
        return Err(Error::invalid(format!(
            "NTV needs an affinity operator, got {}",
            op.kind()
        )));
    }
    if x.nrows() != op.dim() {
        return Err(Error::DimensionMismatch {
            what: "signal rows",
            expected: op.dim(),
            actual: x.nrows(),
        });
    }
    let f = x.ncols();
    let [residual, norm] = chunked_sums(op.dim(), |i| {
        let mut agg = vec![0.0; f];
        op.apply_row(i, x, &mut agg);
        let xi = x.row(i);
        let mut res = 0.0;
        let mut nrm = 0.0;
        for (&v, &a) in xi.iter().zip(&agg) {
            res += (v - a) * (v - a);
            nrm += v * v;
        }
        [res, nrm]
    });
    if norm == 0.0 {
        return Err(Error::degenerate("NTV is undefined for an all-zero signal"));
    }
    let value = residual / (2.0 * norm);
    if value > 1.0 {
        log::warn!("NTV {value:.4} exceeds 1 for operator {}", op.kind());
    }
    Ok(value)
}

/// Dirichlet energy `trace(X^T L X)`, summed edge by edge.
pub fn dirichlet_energy(g: &AttributedGraph, x: ArrayView2<'_, f64>) -> Result<f64> {
    check_rows(g, x)?;
    let edges = g.edges();
    let [sum] = chunked_sums(edges.len(), |e| {
        let (u, v) = edges[e];
        [match (x.row(u).as_slice(), x.row(v).as_slice()) {
            (Some(a), Some(b)) => squared_distance(a, b),
            _ => (&x.row(u) - &x.row(v)).mapv(|d| d * d).sum(),
        }]
    });
    Ok(sum)
}

/// `trace(X^T (N I - 1 1^T) X)`, the total squared distance over all
/// unordered pairs. Evaluated as `N * sum ||x_i - mean||^2`.
pub fn total_pair_energy(x: ArrayView2<'_, f64>) -> f64 {
    x.nrows() as f64 * centered_sum_of_squares(x)
}

fn complement_from_parts(total: f64, graph_energy: f64) -> Result<f64> {
    let value = total - graph_energy;
    if value >= 0.0 {
        Ok(value)
    } else if -value <= COMPLEMENT_CLAMP * total.max(graph_energy) {
        Ok(0.0)
    } else {
        Err(Error::Consistency(format!(
            "complement energy {value:e} is negative beyond rounding (total {total:e})"
        )))
    }
}

/// Dirichlet energy on the complement graph, `trace(X^T L^C X)` with
/// `L^C = N I - 1 1^T - L`.
pub fn complement_energy(g: &AttributedGraph, x: ArrayView2<'_, f64>) -> Result<f64> {
    let graph_energy = dirichlet_energy(g, x)?;
    complement_from_parts(total_pair_energy(x), graph_energy)
}

fn normalized_energies(g: &AttributedGraph, x: ArrayView2<'_, f64>) -> Result<(f64, f64)> {
    let m = g.num_edges() as f64;
    let n = g.num_nodes() as f64;
    if g.num_edges() == 0 {
        return Err(Error::degenerate("NSV is undefined on a graph without edges"));
    }
    if g.complement_stats().pair_count_unconnected == 0 {
        return Err(Error::degenerate(
            "NSV is undefined on a complete graph (empty complement)",
        ));
    }
    let graph_energy = dirichlet_energy(g, x)?;
    let comp = complement_from_parts(total_pair_energy(x), graph_energy)?;
    Ok((graph_energy / (2.0 * m), comp / (n * (n - 1.0) - 2.0 * m)))
}

fn nsv_from(e_graph: f64, e_comp: f64) -> Result<f64> {
    let denom = e_graph + e_comp;
    if denom <= 0.0 {
        return Err(Error::degenerate(
            "NSV is undefined for a constant signal (both energies are zero)",
        ));
    }
    Ok(e_graph / denom)
}

/// Normalized smoothness value `E_N / (E_N + E_N^C)`; 0.5 is neutral.
pub fn nsv(g: &AttributedGraph, x: ArrayView2<'_, f64>) -> Result<f64> {
    let (e_graph, e_comp) = normalized_energies(g, x)?;
    nsv_from(e_graph, e_comp)
}

pub fn smoothness(
    g: &AttributedGraph,
    op: &GraphOperator,
    x: ArrayView2<'_, f64>,
) -> Result<SmoothnessValues> {
    let (e_n_graph, e_n_complement) = normalized_energies(g, x)?;
    Ok(SmoothnessValues {
        ntv: ntv(op, x)?,
        e_n_graph,
        e_n_complement,
        nsv: nsv_from(e_n_graph, e_n_complement)?,
    })
}

/// Fraction of edges joining same-label nodes.
pub fn edge_homophily(g: &AttributedGraph) -> Result<f64> {
    if g.num_edges() == 0 {
        return Err(Error::degenerate("edge homophily is undefined without edges"));
    }
    let labels = g.labels();
    let same = g
        .edges()
        .iter()
        .filter(|&&(u, v)| labels[u] == labels[v])
        .count();
    Ok(same as f64 / g.num_edges() as f64)
}

/// Mean over nodes of the same-label share of their neighbours.
///
/// Isolated nodes have no neighbourhood and are left out of the mean.
pub fn node_homophily(g: &AttributedGraph) -> Result<f64> {
    let labels = g.labels();
    let mut total = 0.0;
    let mut counted = 0usize;
    for i in 0..g.num_nodes() {
        let nbrs = g.neighbors(i);
        if nbrs.is_empty() {
            continue;
        }
        let same = nbrs.iter().filter(|&&j| labels[j] == labels[i]).count();
        total += same as f64 / nbrs.len() as f64;
        counted += 1;
    }
    if counted == 0 {
        return Err(Error::degenerate("node homophily is undefined: every node is isolated"));
    }
    if counted < g.num_nodes() {
        log::warn!(
            "node homophily skips {} isolated nodes",
            g.num_nodes() - counted
        );
    }
    Ok(total / counted as f64)
}

/// Class-balanced homophily: `1/(C-1) sum_k [h_k - |class k| / N]_+`.
///
/// Classes whose degree sum is zero get `h_k = 0`.
pub fn class_homophily(g: &AttributedGraph) -> Result<f64> {
    let c = g.num_classes();
    if c < 2 {
        return Err(Error::degenerate("class homophily needs at least 2 classes"));
    }
    let labels = g.labels();
    let mut same = Array1::<f64>::zeros(c);
    let mut degree_sum = Array1::<f64>::zeros(c);
    for i in 0..g.num_nodes() {
        let k = labels[i];
        degree_sum[k] += g.degree(i) as f64;
        same[k] += g.neighbors(i).iter().filter(|&&j| labels[j] == k).count() as f64;
    }
    let n = g.num_nodes() as f64;
    let sizes = g.class_sizes();
    let total: f64 = (0..c)
        .map(|k| {
            let h_k = if degree_sum[k] > 0.0 {
                same[k] / degree_sum[k]
            } else {
                0.0
            };
            (h_k - sizes[k] as f64 / n).max(0.0)
        })
        .sum();
    Ok(total / (c as f64 - 1.0))
}

pub fn homophily(g: &AttributedGraph) -> Result<HomophilyMetrics> {
    Ok(HomophilyMetrics {
        h_node: node_homophily(g)?,
        h_edge: edge_homophily(g)?,
        h_class: class_homophily(g)?,
    })
}

/// Divides each row by its L1 norm. Zero rows are left as they are.
pub fn row_normalize(x: ArrayView2<'_, f64>) -> (ndarray::Array2<f64>, usize) {
    let mut out = x.to_owned();
    let mut zero_rows = 0;
    for mut row in out.rows_mut() {
        let l1: f64 = row.iter().map(|v| v.abs()).sum();
        if l1 > 0.0 {
            row /= l1;
        } else {
            zero_rows += 1;
        }
    }
    if zero_rows > 0 {
        log::warn!("row normalization left {zero_rows} all-zero feature rows unchanged");
    }
    (out, zero_rows)
}
