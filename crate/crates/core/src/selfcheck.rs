//! Built-in numerical identity checks on random instances.

use ndarray::Array2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{similarity_check, AttributedGraph, GraphOperator, OperatorKind};
use crate::measures::{complement_energy, dirichlet_energy};
use crate::numeric::{squared_distance, CompensatedSum};
use crate::verifier::{softmax_xent_loss, xent_grad_at, softmax_xent_loss_at};

pub const IDENTITY_TOL: f64 = 1e-9;
pub const GRADIENT_TOL: f64 = 1e-5;
pub const GRADIENT_STEP: f64 = 1e-5;
pub const LOSS_TOL: f64 = 1e-10;
pub const SIMILARITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SuiteResult {
    fn new(name: &str, trials: usize, max_error: f64, tolerance: f64) -> Self {
        SuiteResult {
            name: name.to_string(),
            trials,
            max_error,
            tolerance,
            passed: max_error <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfCheckReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

/// Erdos-Renyi graph with Gaussian features and uniform labels. With `ring`
/// set, the cycle `0-1-...-(n-1)-0` is added so no node is isolated.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    f: usize,
    c: usize,
    p: f64,
    ring: bool,
) -> Result<AttributedGraph> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    if ring {
        edges.extend((0..n).map(|i| (i, (i + 1) % n)));
    }
    let features = Array2::from_shape_simple_fn((n, f), || rng.sample::<f64, _>(StandardNormal));
    let labels = (0..n).map(|_| rng.random_range(0..c)).collect();
    AttributedGraph::new(n, &edges, features, labels, Some(c))
}

fn one_hot(labels: &[usize], c: usize) -> Array2<f64> {
    let mut z = Array2::zeros((labels.len(), c));
    for (i, &l) in labels.iter().enumerate() {
        z[[i, l]] = 1.0;
    }
    z
}

/// `E_D(G) + E_D(G^C) = N (N - 1) trace(Cov(X))`, with the complement
/// energy both from the library and by enumerating non-adjacent pairs.
pub fn covariance_identity_suite(trials: usize, seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(2..=64);
        let f = rng.random_range(1..=16);
        let p = rng.random_range(0.0..0.6);
        let g = random_instance(&mut rng, n, f, 2, p, false)?;
        let x = g.features();

        let mut adjacent = vec![false; n * n];
        for &(u, v) in g.edges() {
            adjacent[u * n + v] = true;
        }
        let mut brute = CompensatedSum::default();
        for i in 0..n {
            for j in i + 1..n {
                if !adjacent[i * n + j] {
                    brute.add(squared_distance(
                        x.row(i).as_slice().unwrap(),
                        x.row(j).as_slice().unwrap(),
                    ));
                }
            }
        }
        let brute = brute.value();

        let mut trace_cov = 0.0;
        for col in x.columns() {
            let mean = col.sum() / n as f64;
            trace_cov += col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0);
        }
        let rhs = n as f64 * (n as f64 - 1.0) * trace_cov;
        let graph = dirichlet_energy(&g, x)?;
        let library = complement_energy(&g, x)?;
        let scale = rhs.max(f64::MIN_POSITIVE);
        worst = worst
            .max((graph + brute - rhs).abs() / scale)
            .max((graph + library - rhs).abs() / scale)
            .max((library - brute).abs() / scale);
    }
    Ok(SuiteResult::new("covariance-identity", trials, worst, IDENTITY_TOL))
}

fn loss_instance(rng: &mut ChaCha8Rng) -> Result<(GraphOperator, Array2<f64>, Array2<f64>, Array2<f64>)> {
    let (n, f, c) = (20, 8, 4);
    let g = random_instance(rng, n, f, c, 0.2, true)?;
    let op = GraphOperator::new(&g, OperatorKind::RenormSymAffinity)?;
    let w = Array2::from_shape_simple_fn((f, c), || rng.sample::<f64, _>(StandardNormal));
    Ok((op, g.features().to_owned(), w, one_hot(g.labels(), c)))
}

/// Closed-form gradient against central differences of the loss in `X W`.
/// The error is `max |g - fd| / max |g|`.
pub fn gradient_suite(trials: usize, seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let (op, x, w, z) = loss_instance(&mut rng)?;
        let xt = x.dot(&w);
        let grad = xent_grad_at(&op, xt.view(), z.view())?;
        let mut max_diff = 0.0f64;
        let mut xp = xt.clone();
        for idx in ndarray::indices(xt.raw_dim()) {
            let orig = xt[idx];
            xp[idx] = orig + GRADIENT_STEP;
            let up = softmax_xent_loss_at(&op, xp.view(), z.view())?.direct;
            xp[idx] = orig - GRADIENT_STEP;
            let down = softmax_xent_loss_at(&op, xp.view(), z.view())?.direct;
            xp[idx] = orig;
            let fd = (up - down) / (2.0 * GRADIENT_STEP);
            max_diff = max_diff.max((grad[idx] - fd).abs());
        }
        let scale = grad.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        worst = worst.max(max_diff / scale.max(f64::MIN_POSITIVE));
    }
    Ok(SuiteResult::new("gradient-finite-difference", trials, worst, GRADIENT_TOL))
}

/// Direct cross-entropy against alignment plus log-partition.
pub fn loss_decomposition_suite(trials: usize, seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let (op, x, w, z) = loss_instance(&mut rng)?;
        let loss = softmax_xent_loss(&op, x.view(), w.view(), z.view())?;
        worst = worst.max(loss.decomposition_error());
    }
    Ok(SuiteResult::new("loss-decomposition", trials, worst, LOSS_TOL))
}

/// `D^{1/2} A_rw D^{-1/2} = A_sym` on graphs without isolated nodes.
pub fn similarity_suite(trials: usize, seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(3..=64);
        let p = rng.random_range(0.0..0.5);
        let g = random_instance(&mut rng, n, 1, 2, p, true)?;
        worst = worst.max(similarity_check(&g)?);
    }
    Ok(SuiteResult::new("similarity", trials, worst, SIMILARITY_TOL))
}

pub fn run_all(trials: usize, seed: u64) -> Result<SelfCheckReport> {
    Ok(SelfCheckReport {
        seed,
        suites: vec![
            covariance_identity_suite(trials, seed)?,
            gradient_suite(trials, seed.wrapping_add(1))?,
            loss_decomposition_suite(trials, seed.wrapping_add(2))?,
            similarity_suite(trials, seed.wrapping_add(3))?,
        ],
    })
}
