//! Empirical check of the verdict with linear models.
//!
//! A graph-aware model `softmax(A X W)` and a graph-agnostic model
//! `softmax(X W)` are both fitted in closed form by ridge least squares
//! against one-hot labels, then compared on held-out nodes. The module also
//! exposes the cross-entropy loss of the linear graph model in two algebraic
//! forms and its closed-form gradient with respect to `X W`.

use nalgebra::DMatrix;
use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, GraphOperator, OperatorKind};

/// Relative residual accepted from the ridge normal equations.
const RIDGE_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train: f64,
    pub val: f64,
    pub test: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train: 0.6,
            val: 0.2,
            test: 0.2,
            seed: 42,
            stratified: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub val: Vec<usize>,
    pub test: Vec<usize>,
}

impl SplitSpec {
    pub fn validate(&self) -> Result<()> {
        let fr = [self.train, self.val, self.test];
        if fr.iter().any(|&f| !(f > 0.0)) || (fr.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "split fractions must be positive and sum to 1, got {}/{}/{}",
                self.train, self.val, self.test
            )));
        }
        Ok(())
    }

    /// Shuffles nodes with a ChaCha8 stream seeded by `seed` and cuts them
    /// into train/val/test, per class when stratified.
    pub fn split(&self, labels: &[usize], num_classes: usize, seed: u64) -> Result<Split> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let groups: Vec<Vec<usize>> = if self.stratified {
            let mut by_class = vec![Vec::new(); num_classes];
            for (i, &c) in labels.iter().enumerate() {
                by_class[c].push(i);
            }
            by_class
        } else {
            vec![(0..labels.len()).collect()]
        };
        let mut split = Split {
            train: Vec::new(),
            val: Vec::new(),
            test: Vec::new(),
        };
        for mut group in groups {
            group.shuffle(&mut rng);
            let n = group.len();
            let n_train = ((self.train * n as f64).round() as usize).clamp(n.min(1), n);
            let n_val = ((self.val * n as f64).round() as usize).min(n - n_train);
            split.train.extend_from_slice(&group[..n_train]);
            split.val.extend_from_slice(&group[n_train..n_train + n_val]);
            split.test.extend_from_slice(&group[n_train + n_val..]);
        }
        let mut seen = vec![false; num_classes];
        for &i in &split.train {
            seen[labels[i]] = true;
        }
        if let Some(c) = seen.iter().position(|&s| !s) {
            return Err(Error::degenerate(format!(
                "class {c} has no training node"
            )));
        }
        if split.test.is_empty() {
            return Err(Error::degenerate("test split is empty"));
        }
        Ok(split)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lambda {
    /// `1e-3 * trace(M^T M) / F`, recomputed for every design matrix.
    Auto,
    Fixed(f64),
}

impl Lambda {
    pub fn resolve(self, m: ArrayView2<'_, f64>) -> f64 {
        match self {
            Lambda::Fixed(v) => v,
            Lambda::Auto => {
                let trace: f64 = m.iter().map(|v| v * v).sum();
                let auto = 1e-3 * trace / m.ncols().max(1) as f64;
                if auto > 0.0 {
                    auto
                } else {
                    1e-3
                }
            }
        }
    }
}

/// Solves `(M^T M + lambda I) W = M^T Z` by Cholesky factorization.
pub fn ridge_fit(m: ArrayView2<'_, f64>, z: ArrayView2<'_, f64>, lambda: f64) -> Result<Array2<f64>> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::invalid(format!("ridge lambda must be positive, got {lambda}")));
    }
    if m.nrows() != z.nrows() {
        return Err(Error::DimensionMismatch {
            what: "ridge target rows",
            expected: m.nrows(),
            actual: z.nrows(),
        });
    }
    let f = m.ncols();
    let c = z.ncols();
    let mut gram = m.t().dot(&m);
    for i in 0..f {
        gram[[i, i]] += lambda;
    }
    let rhs = m.t().dot(&z);
    let gram_na = DMatrix::from_fn(f, f, |i, j| gram[[i, j]]);
    let rhs_na = DMatrix::from_fn(f, c, |i, j| rhs[[i, j]]);
    let chol = gram_na
        .clone()
        .cholesky()
        .ok_or_else(|| Error::degenerate("ridge system is not positive definite"))?;
    let mut w = chol.solve(&rhs_na);
    // one step of iterative refinement
    let residual = &rhs_na - &gram_na * &w;
    w += chol.solve(&residual);

    let residual = (&gram_na * &w - &rhs_na).norm();
    let scale = rhs_na.norm();
    if residual > RIDGE_RESIDUAL_TOL * scale.max(f64::MIN_POSITIVE) && residual > 0.0 {
        return Err(Error::Consistency(format!(
            "ridge normal-equation residual {residual:e} exceeds tolerance (|M^T Z| = {scale:e})"
        )));
    }
    Ok(Array2::from_shape_fn((f, c), |(i, j)| w[(i, j)]))
}

fn argmax_accuracy(scores: ArrayView2<'_, f64>, labels: &[usize]) -> f64 {
    let correct = scores
        .axis_iter(Axis(0))
        .zip(labels)
        .filter(|(row, &label)| {
            let mut best = 0;
            for (c, &v) in row.iter().enumerate() {
                if v > row[best] {
                    best = c;
                }
            }
            best == label
        })
        .count();
    correct as f64 / labels.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub seed: u64,
    pub acc_graph_aware: f64,
    pub acc_graph_agnostic: f64,
    pub gap: f64,
    pub lambda_graph_aware: f64,
    pub lambda_graph_agnostic: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub operator: OperatorKind,
    pub lambda: Lambda,
    pub split: SplitSpec,
    pub acc_graph_aware: f64,
    pub acc_graph_aware_std: f64,
    pub acc_graph_agnostic: f64,
    pub acc_graph_agnostic_std: f64,
    pub gap: f64,
    pub gap_std: f64,
    pub runs: Vec<RunResult>,
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn fit_and_score(
    design: ArrayView2<'_, f64>,
    labels: &[usize],
    num_classes: usize,
    split: &Split,
    lambda: Lambda,
) -> Result<(f64, f64)> {
    let m_train = design.select(Axis(0), &split.train);
    let mut z_train = Array2::zeros((split.train.len(), num_classes));
    for (r, &i) in split.train.iter().enumerate() {
        z_train[[r, labels[i]]] = 1.0;
    }
    let lam = lambda.resolve(m_train.view());
    let w = ridge_fit(m_train.view(), z_train.view(), lam)?;
    let scores = design.select(Axis(0), &split.test).dot(&w);
    let test_labels: Vec<usize> = split.test.iter().map(|&i| labels[i]).collect();
    Ok((argmax_accuracy(scores.view(), &test_labels), lam))
}

/// Fits `A X W` and `X W` on the training nodes of `n_seeds` splits and
/// reports test accuracies. The filter is applied to the whole graph, so
/// test-node neighbourhoods are visible while fitting, as in a transductive
/// GCN.
pub fn compare_linear_models(
    g: &AttributedGraph,
    split: &SplitSpec,
    lambda: Lambda,
    kind: OperatorKind,
    n_seeds: usize,
) -> Result<ComparisonResult> {
    split.validate()?;
    if g.num_classes() < 2 {
        return Err(Error::degenerate("model comparison needs at least 2 classes"));
    }
    if n_seeds == 0 {
        return Err(Error::invalid("at least one seed is required"));
    }
    let op = GraphOperator::new(g, kind)?;
    let x = g.features();
    let ax = op.apply(x)?;
    let runs: Vec<RunResult> = (0..n_seeds as u64)
        .into_par_iter()
        .map(|i| {
            let seed = split.seed.wrapping_add(i);
            let s = split.split(g.labels(), g.num_classes(), seed)?;
            let (acc_aware, lam_aware) =
                fit_and_score(ax.view(), g.labels(), g.num_classes(), &s, lambda)?;
            let (acc_agnostic, lam_agnostic) =
                fit_and_score(x, g.labels(), g.num_classes(), &s, lambda)?;
            Ok(RunResult {
                seed,
                acc_graph_aware: acc_aware,
                acc_graph_agnostic: acc_agnostic,
                gap: acc_aware - acc_agnostic,
                lambda_graph_aware: lam_aware,
                lambda_graph_agnostic: lam_agnostic,
            })
        })
        .collect::<Result<_>>()?;
    let (aware, aware_std) = mean_std(runs.iter().map(|r| r.acc_graph_aware));
    let (agnostic, agnostic_std) = mean_std(runs.iter().map(|r| r.acc_graph_agnostic));
    let (gap, gap_std) = mean_std(runs.iter().map(|r| r.gap));
    Ok(ComparisonResult {
        operator: kind,
        lambda,
        split: *split,
        acc_graph_aware: aware,
        acc_graph_aware_std: aware_std,
        acc_graph_agnostic: agnostic,
        acc_graph_agnostic_std: agnostic_std,
        gap,
        gap_std,
        runs,
    })
}

/// Cross-entropy `-trace(Z^T log softmax(A X W))` evaluated two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XentLoss {
    /// From the softmax probabilities directly.
    pub direct: f64,
    /// `-trace(Z^T A X W)`, the label-alignment term.
    pub alignment: f64,
    /// `sum_i log sum_c exp((A X W)_ic)`, the label-free normalizer.
    pub log_partition: f64,
}

impl XentLoss {
    pub fn decomposed(&self) -> f64 {
        self.alignment + self.log_partition
    }

    /// Disagreement between the two routes, relative to the size of the
    /// decomposed terms.
    pub fn decomposition_error(&self) -> f64 {
        let scale = self.alignment.abs() + self.log_partition.abs();
        (self.direct - self.decomposed()).abs() / scale.max(1.0)
    }
}

fn check_shapes(op: &GraphOperator, x_tilde: ArrayView2<'_, f64>, z: ArrayView2<'_, f64>) -> Result<()> {
    if x_tilde.nrows() != op.dim() || z.nrows() != op.dim() {
        return Err(Error::DimensionMismatch {
            what: "loss rows",
            expected: op.dim(),
            actual: if x_tilde.nrows() != op.dim() { x_tilde.nrows() } else { z.nrows() },
        });
    }
    if x_tilde.ncols() != z.ncols() {
        return Err(Error::DimensionMismatch {
            what: "loss classes",
            expected: z.ncols(),
            actual: x_tilde.ncols(),
        });
    }
    Ok(())
}

fn log_sum_exp(row: ndarray::ArrayView1<'_, f64>) -> f64 {
    let max = row.fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    max + row.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

/// Loss as a function of `X~ = X W`.
pub fn softmax_xent_loss_at(
    op: &GraphOperator,
    x_tilde: ArrayView2<'_, f64>,
    z: ArrayView2<'_, f64>,
) -> Result<XentLoss> {
    check_shapes(op, x_tilde, z)?;
    let logits = op.apply(x_tilde)?;
    let mut direct = 0.0;
    let mut log_partition = 0.0;
    for (row, zrow) in logits.axis_iter(Axis(0)).zip(z.axis_iter(Axis(0))) {
        let max = row.fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let exps: Array1<f64> = row.mapv(|v| (v - max).exp());
        let denom = exps.sum();
        for (&e, &zc) in exps.iter().zip(zrow) {
            if zc != 0.0 {
                direct -= zc * (e / denom).ln();
            }
        }
        log_partition += log_sum_exp(row);
    }
    let alignment = -(&logits * &z).sum();
    Ok(XentLoss {
        direct,
        alignment,
        log_partition,
    })
}

pub fn softmax_xent_loss(
    op: &GraphOperator,
    x: ArrayView2<'_, f64>,
    w: ArrayView2<'_, f64>,
    z: ArrayView2<'_, f64>,
) -> Result<XentLoss> {
    softmax_xent_loss_at(op, x.dot(&w).view(), z)
}

/// `dL / dX~` in closed form:
/// `-sum_i A_ij' (Z_ic' P(Y_i != c') + (Z_ic' - 1) P(Y_i = c'))`.
pub fn xent_grad_at(
    op: &GraphOperator,
    x_tilde: ArrayView2<'_, f64>,
    z: ArrayView2<'_, f64>,
) -> Result<Array2<f64>> {
    check_shapes(op, x_tilde, z)?;
    let logits = op.apply(x_tilde)?;
    let mut coeff = Array2::zeros(logits.raw_dim());
    for ((row, zrow), mut out) in logits
        .axis_iter(Axis(0))
        .zip(z.axis_iter(Axis(0)))
        .zip(coeff.axis_iter_mut(Axis(0)))
    {
        let lse = log_sum_exp(row);
        for ((&y, &zc), o) in row.iter().zip(zrow).zip(out.iter_mut()) {
            let p_same = (y - lse).exp();
            *o = -(zc * (1.0 - p_same) + (zc - 1.0) * p_same);
        }
    }
    op.apply_transpose(coeff.view())
}

pub fn xent_grad(
    op: &GraphOperator,
    x: ArrayView2<'_, f64>,
    w: ArrayView2<'_, f64>,
    z: ArrayView2<'_, f64>,
) -> Result<Array2<f64>> {
    xent_grad_at(op, x.dot(&w).view(), z)
}
