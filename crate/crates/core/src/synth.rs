//! Stochastic block model generator with Gaussian class-mean features.
//!
//! Randomness comes from a single `ChaCha8Rng` seeded with
//! `seed_from_u64(seed)` and consumed in a fixed order: one uniform draw per
//! node pair `(i, j)`, `i < j`, in lexicographic order, then one standard
//! normal draw per feature entry in row-major order. Labels are assigned in
//! contiguous blocks and use no randomness.

use ndarray::Array2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SbmParams {
    pub num_nodes: usize,
    pub num_classes: usize,
    /// Uniform when absent; normalized to sum to one otherwise.
    pub class_proportions: Option<Vec<f64>>,
    pub p_in: f64,
    pub p_out: f64,
    pub feat_dim: usize,
    pub separation: f64,
    pub noise: f64,
    pub seed: u64,
}

impl SbmParams {
    fn proportions(&self) -> Result<Vec<f64>> {
        match &self.class_proportions {
            None => Ok(vec![1.0 / self.num_classes as f64; self.num_classes]),
            Some(p) => {
                if p.len() != self.num_classes {
                    return Err(Error::DimensionMismatch {
                        what: "class proportions",
                        expected: self.num_classes,
                        actual: p.len(),
                    });
                }
                let total: f64 = p.iter().sum();
                if p.iter().any(|&v| !(v >= 0.0 && v.is_finite())) || !(total > 0.0) {
                    return Err(Error::invalid("class proportions must be non-negative with a positive sum"));
                }
                Ok(p.iter().map(|v| v / total).collect())
            }
        }
    }

    /// Block sizes by largest remainder, so they always sum to `num_nodes`.
    pub fn class_sizes(&self) -> Result<Vec<usize>> {
        let props = self.proportions()?;
        let n = self.num_nodes as f64;
        let mut sizes: Vec<usize> = props.iter().map(|p| (p * n).floor() as usize).collect();
        let mut rest: Vec<(usize, f64)> = props
            .iter()
            .enumerate()
            .map(|(c, p)| (c, p * n - (p * n).floor()))
            .collect();
        rest.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let missing = self.num_nodes - sizes.iter().sum::<usize>();
        for &(c, _) in rest.iter().take(missing) {
            sizes[c] += 1;
        }
        Ok(sizes)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_nodes < 2 {
            return Err(Error::TooFewNodes(self.num_nodes));
        }
        if self.num_classes < 1 {
            return Err(Error::invalid("at least one class is required"));
        }
        for (name, p) in [("p_in", self.p_in), ("p_out", self.p_out)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        if self.p_in == 0.0 && self.p_out == 0.0 {
            return Err(Error::invalid("p_in and p_out are both zero"));
        }
        if self.feat_dim < self.num_classes {
            return Err(Error::invalid(format!(
                "feature dimension {} is below the class count {}",
                self.feat_dim, self.num_classes
            )));
        }
        if !(self.separation >= 0.0 && self.separation.is_finite()) {
            return Err(Error::invalid("separation must be finite and non-negative"));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(Error::invalid("noise must be finite and non-negative"));
        }
        if self.expected_edges()? < 1.0 {
            return Err(Error::invalid(format!(
                "expected edge count {:.3} is below 1",
                self.expected_edges()?
            )));
        }
        Ok(())
    }

    pub fn expected_edges(&self) -> Result<f64> {
        let sizes = self.class_sizes()?;
        let n = self.num_nodes as f64;
        let intra: f64 = sizes.iter().map(|&s| (s as f64) * (s as f64 - 1.0) / 2.0).sum();
        let inter = n * (n - 1.0) / 2.0 - intra;
        Ok(intra * self.p_in + inter * self.p_out)
    }
}

pub fn generate(params: &SbmParams) -> Result<AttributedGraph> {
    params.validate()?;
    let n = params.num_nodes;
    let labels: Vec<usize> = params
        .class_sizes()?
        .iter()
        .enumerate()
        .flat_map(|(c, &s)| std::iter::repeat(c).take(s))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if labels[i] == labels[j] {
                params.p_in
            } else {
                params.p_out
            };
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }

    let mut features = Array2::zeros((n, params.feat_dim));
    for (i, mut row) in features.rows_mut().into_iter().enumerate() {
        for v in row.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *v = params.noise * z;
        }
        row[labels[i]] += params.separation;
    }
    AttributedGraph::new(n, &edges, features, labels, Some(params.num_classes))
}
