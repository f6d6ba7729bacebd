//! Sparse attributed graphs and the Laplacian / affinity operator family.
//!
//! Graphs are simple and undirected. Edges are stored twice: as a sorted
//! array of `(u, v)` pairs with `u < v` for pair iteration, and as a
//! compressed-row adjacency for neighbourhood access. Complement-graph
//! quantities are derived from counts and moment identities, never from a
//! materialized complement.

use std::fmt;

use ndarray::{Array2, ArrayView2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphWarning {
    SelfLoopsDropped(usize),
    DuplicateEdgesMerged(usize),
    Disconnected { components: usize },
}

impl fmt::Display for GraphWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphWarning::SelfLoopsDropped(n) => write!(f, "self-loop dropped ({n} total)"),
            GraphWarning::DuplicateEdgesMerged(n) => {
                write!(f, "{n} duplicate or reversed edges merged")
            }
            GraphWarning::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct AttributedGraph {
    num_nodes: usize,
    num_classes: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    features: Array2<f64>,
    labels: Vec<usize>,
    warnings: Vec<GraphWarning>,
}

impl AttributedGraph {
    /// Builds a simple undirected graph from an edge list.
    ///
    /// Edges are symmetrized and deduplicated; self-loops are dropped. The
    /// class count defaults to `1 + max(label)`.
    pub fn new(
        num_nodes: usize,
        edge_list: &[(usize, usize)],
        features: Array2<f64>,
        labels: Vec<usize>,
        num_classes: Option<usize>,
    ) -> Result<Self> {
        if num_nodes < 2 {
            return Err(Error::TooFewNodes(num_nodes));
        }
        if features.nrows() != num_nodes {
            return Err(Error::DimensionMismatch {
                what: "feature rows",
                expected: num_nodes,
                actual: features.nrows(),
            });
        }
        if labels.len() != num_nodes {
            return Err(Error::DimensionMismatch {
                what: "labels",
                expected: num_nodes,
                actual: labels.len(),
            });
        }
        let num_classes =
            num_classes.unwrap_or_else(|| labels.iter().copied().max().map_or(1, |m| m + 1));
        if let Some((node, &label)) = labels.iter().enumerate().find(|(_, &l)| l >= num_classes) {
            return Err(Error::LabelOutOfRange {
                node,
                label,
                num_classes,
            });
        }

        let mut warnings = Vec::new();
        let mut self_loops = 0;
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for node in [u, v] {
                if node >= num_nodes {
                    return Err(Error::NodeOutOfRange { node, num_nodes });
                }
            }
            if u == v {
                self_loops += 1;
                continue;
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        if self_loops > 0 {
            warnings.push(GraphWarning::SelfLoopsDropped(self_loops));
        }
        if before != edges.len() {
            warnings.push(GraphWarning::DuplicateEdgesMerged(before - edges.len()));
        }

        let mut degree = vec![0usize; num_nodes];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(num_nodes + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..num_nodes].to_vec();
        let mut neighbors = vec![0usize; 2 * edges.len()];
        for &(u, v) in &edges {
            neighbors[cursor[u]] = v;
            cursor[u] += 1;
            neighbors[cursor[v]] = u;
            cursor[v] += 1;
        }
        for i in 0..num_nodes {
            neighbors[offsets[i]..offsets[i + 1]].sort_unstable();
        }

        let mut graph = AttributedGraph {
            num_nodes,
            num_classes,
            edges,
            offsets,
            neighbors,
            features,
            labels,
            warnings,
        };
        let components = graph.count_components();
        if components > 1 {
            graph
                .warnings
                .push(GraphWarning::Disconnected { components });
        }
        for w in &graph.warnings {
            log::warn!("{w}");
        }
        Ok(graph)
    }

    fn count_components(&self) -> usize {
        let mut seen = vec![false; self.num_nodes];
        let mut stack = Vec::new();
        let mut components = 0;
        for start in 0..self.num_nodes {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        components
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn num_features(&self) -> usize {
        self.features.ncols()
    }

    /// Unordered edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.num_nodes).map(|i| self.degree(i)).collect()
    }

    pub fn features(&self) -> ArrayView2<'_, f64> {
        self.features.view()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn warnings(&self) -> &[GraphWarning] {
        &self.warnings
    }

    /// Dense `N x C` one-hot label matrix.
    pub fn one_hot_labels(&self) -> Array2<f64> {
        let mut z = Array2::zeros((self.num_nodes, self.num_classes));
        for (i, &c) in self.labels.iter().enumerate() {
            z[[i, c]] = 1.0;
        }
        z
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes];
        for &c in &self.labels {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn complement_stats(&self) -> ComplementStats {
        let total = self.num_nodes as u64 * (self.num_nodes as u64 - 1) / 2;
        let connected = self.edges.len() as u64;
        ComplementStats {
            pair_count_connected: connected,
            pair_count_unconnected: total - connected,
        }
    }

    /// Same topology and labels, different node features.
    pub fn with_features(&self, features: Array2<f64>) -> Result<Self> {
        if features.nrows() != self.num_nodes {
            return Err(Error::DimensionMismatch {
                what: "feature rows",
                expected: self.num_nodes,
                actual: features.nrows(),
            });
        }
        Ok(AttributedGraph {
            features,
            ..self.clone_topology()
        })
    }

    fn clone_topology(&self) -> Self {
        AttributedGraph {
            num_nodes: self.num_nodes,
            num_classes: self.num_classes,
            edges: self.edges.clone(),
            offsets: self.offsets.clone(),
            neighbors: self.neighbors.clone(),
            features: Array2::zeros((self.num_nodes, 0)),
            labels: self.labels.clone(),
            warnings: self.warnings.clone(),
        }
    }
}

/// Pair counts of the graph and its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplementStats {
    pub pair_count_connected: u64,
    pub pair_count_unconnected: u64,
}

impl ComplementStats {
    pub fn total_pairs(&self) -> u64 {
        self.pair_count_connected + self.pair_count_unconnected
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    /// `L = D - A`
    CombinatorialLaplacian,
    /// `I - D^{-1/2} A D^{-1/2}`
    SymLaplacian,
    /// `I - D^{-1} A`
    RwLaplacian,
    /// `D^{-1/2} A D^{-1/2}`
    SymAffinity,
    /// `D^{-1} A`
    RwAffinity,
    /// `(D+I)^{-1/2} (A+I) (D+I)^{-1/2}`, the GCN propagation matrix.
    RenormSymAffinity,
    /// `(D+I)^{-1} (A+I)`, a mean over the closed neighbourhood.
    RenormRwAffinity,
    RenormSymLaplacian,
    RenormRwLaplacian,
    /// Identity filter; the graph-agnostic special case.
    Identity,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 10] = [
        OperatorKind::CombinatorialLaplacian,
        OperatorKind::SymLaplacian,
        OperatorKind::RwLaplacian,
        OperatorKind::SymAffinity,
        OperatorKind::RwAffinity,
        OperatorKind::RenormSymAffinity,
        OperatorKind::RenormRwAffinity,
        OperatorKind::RenormSymLaplacian,
        OperatorKind::RenormRwLaplacian,
        OperatorKind::Identity,
    ];

    pub fn is_laplacian(self) -> bool {
        matches!(
            self,
            OperatorKind::CombinatorialLaplacian
                | OperatorKind::SymLaplacian
                | OperatorKind::RwLaplacian
                | OperatorKind::RenormSymLaplacian
                | OperatorKind::RenormRwLaplacian
        )
    }

    pub fn is_symmetric(self) -> bool {
        !matches!(
            self,
            OperatorKind::RwLaplacian
                | OperatorKind::RwAffinity
                | OperatorKind::RenormRwAffinity
                | OperatorKind::RenormRwLaplacian
        )
    }

    fn needs_positive_degree(self) -> bool {
        matches!(
            self,
            OperatorKind::SymLaplacian
                | OperatorKind::RwLaplacian
                | OperatorKind::SymAffinity
                | OperatorKind::RwAffinity
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::CombinatorialLaplacian => "combinatorial-laplacian",
            OperatorKind::SymLaplacian => "sym-laplacian",
            OperatorKind::RwLaplacian => "rw-laplacian",
            OperatorKind::SymAffinity => "sym-affinity",
            OperatorKind::RwAffinity => "rw-affinity",
            OperatorKind::RenormSymAffinity => "renorm-sym-affinity",
            OperatorKind::RenormRwAffinity => "renorm-rw-affinity",
            OperatorKind::RenormSymLaplacian => "renorm-sym-laplacian",
            OperatorKind::RenormRwLaplacian => "renorm-rw-laplacian",
            OperatorKind::Identity => "identity",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An `N x N` sparse filter in compressed-row form.
#[derive(Debug, Clone)]
pub struct GraphOperator {
    kind: OperatorKind,
    n: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

impl GraphOperator {
    pub fn new(g: &AttributedGraph, kind: OperatorKind) -> Result<Self> {
        let n = g.num_nodes();
        if kind == OperatorKind::Identity {
            return Ok(Self::identity(n));
        }
        if kind.needs_positive_degree() {
            if let Some(node) = (0..n).find(|&i| g.degree(i) == 0) {
                return Err(Error::IsolatedNode {
                    node,
                    kind: kind.name(),
                });
            }
        }
        let renorm = matches!(
            kind,
            OperatorKind::RenormSymAffinity
                | OperatorKind::RenormRwAffinity
                | OperatorKind::RenormSymLaplacian
                | OperatorKind::RenormRwLaplacian
        );
        let deg: Vec<f64> = (0..n)
            .map(|i| g.degree(i) as f64 + if renorm { 1.0 } else { 0.0 })
            .collect();
        let inv_sqrt: Vec<f64> = deg.iter().map(|d| 1.0 / d.sqrt()).collect();

        // Affinity weight of entry (i, j), including the renormalization self-loop.
        let affinity = |i: usize, j: usize| -> f64 {
            match kind {
                OperatorKind::SymAffinity
                | OperatorKind::SymLaplacian
                | OperatorKind::RenormSymAffinity
                | OperatorKind::RenormSymLaplacian => inv_sqrt[i] * inv_sqrt[j],
                OperatorKind::RwAffinity
                | OperatorKind::RwLaplacian
                | OperatorKind::RenormRwAffinity
                | OperatorKind::RenormRwLaplacian => 1.0 / deg[i],
                OperatorKind::CombinatorialLaplacian => 1.0,
                OperatorKind::Identity => unreachable!(),
            }
        };

        let mut row_offsets = Vec::with_capacity(n + 1);
        let mut col_indices = Vec::with_capacity(2 * g.num_edges() + n);
        let mut values = Vec::with_capacity(2 * g.num_edges() + n);
        row_offsets.push(0);
        for i in 0..n {
            let nbrs = g.neighbors(i);
            let diag = match kind {
                OperatorKind::CombinatorialLaplacian => Some(g.degree(i) as f64),
                OperatorKind::SymLaplacian | OperatorKind::RwLaplacian => Some(1.0),
                OperatorKind::SymAffinity | OperatorKind::RwAffinity => None,
                OperatorKind::RenormSymAffinity | OperatorKind::RenormRwAffinity => {
                    Some(affinity(i, i))
                }
                OperatorKind::RenormSymLaplacian | OperatorKind::RenormRwLaplacian => {
                    Some(1.0 - affinity(i, i))
                }
                OperatorKind::Identity => unreachable!(),
            };
            let sign = if kind.is_laplacian() { -1.0 } else { 1.0 };
            let mut diag_pending = diag;
            for &j in nbrs {
                if j > i {
                    if let Some(d) = diag_pending.take() {
                        col_indices.push(i);
                        values.push(d);
                    }
                }
                col_indices.push(j);
                values.push(sign * affinity(i, j));
            }
            if let Some(d) = diag_pending {
                col_indices.push(i);
                values.push(d);
            }
            row_offsets.push(col_indices.len());
        }
        Ok(GraphOperator {
            kind,
            n,
            row_offsets,
            col_indices,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        GraphOperator {
            kind: OperatorKind::Identity,
            n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Column indices and values of row `i`, in increasing column order.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_offsets[i]..self.row_offsets[i + 1];
        (&self.col_indices[r.clone()], &self.values[r])
    }

    /// Writes row `i` of the product with `x` into `out`.
    pub fn apply_row(&self, i: usize, x: ArrayView2<'_, f64>, out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        let (cols, vals) = self.row(i);
        for (&j, &a) in cols.iter().zip(vals) {
            for (o, &xj) in out.iter_mut().zip(x.row(j)) {
                *o += a * xj;
            }
        }
    }

    pub fn apply(&self, x: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        self.check_rows(x)?;
        let mut out = Array2::zeros((self.n, x.ncols()));
        for (i, mut row) in out.rows_mut().into_iter().enumerate() {
            let (cols, vals) = self.row(i);
            for (&j, &a) in cols.iter().zip(vals) {
                row.scaled_add(a, &x.row(j));
            }
        }
        Ok(out)
    }

    /// Product with the transposed operator.
    pub fn apply_transpose(&self, x: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        self.check_rows(x)?;
        let mut out = Array2::zeros((self.n, x.ncols()));
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&j, &a) in cols.iter().zip(vals) {
                let mut target = out.row_mut(j);
                target.scaled_add(a, &x.row(i));
            }
        }
        Ok(out)
    }

    fn check_rows(&self, x: ArrayView2<'_, f64>) -> Result<()> {
        if x.nrows() != self.n {
            return Err(Error::DimensionMismatch {
                what: "operator input rows",
                expected: self.n,
                actual: x.nrows(),
            });
        }
        Ok(())
    }

    /// Dense copy. Quadratic memory; meant for small graphs and tests.
    pub fn to_dense(&self) -> Array2<f64> {
        let mut dense = Array2::zeros((self.n, self.n));
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&j, &a) in cols.iter().zip(vals) {
                dense[[i, j]] += a;
            }
        }
        dense
    }
}

/// Max-abs deviation between `D^{1/2} A_rw D^{-1/2}` and `A_sym`.
///
/// The two matrices are similar, which is why the random-walk and symmetric
/// normalized Laplacians share their spectrum.
pub fn similarity_check(g: &AttributedGraph) -> Result<f64> {
    let rw = GraphOperator::new(g, OperatorKind::RwAffinity)?;
    let sym = GraphOperator::new(g, OperatorKind::SymAffinity)?;
    let sqrt_deg: Vec<f64> = g.degrees().iter().map(|&d| (d as f64).sqrt()).collect();
    let mut max_dev = 0.0f64;
    for i in 0..g.num_nodes() {
        let (rw_cols, rw_vals) = rw.row(i);
        let (sym_cols, sym_vals) = sym.row(i);
        debug_assert_eq!(rw_cols, sym_cols);
        for ((&j, &a_rw), &a_sym) in rw_cols.iter().zip(rw_vals).zip(sym_vals) {
            let similar = sqrt_deg[i] * a_rw / sqrt_deg[j];
            max_dev = max_dev.max((similar - a_sym).abs());
        }
    }
    Ok(max_dev)
}
