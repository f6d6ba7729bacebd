//! Turns the measures and tests into a per-dataset report and a binary
//! prediction of whether graph-aware models should beat graph-agnostic ones.

use std::fmt;

use ndarray::ArrayView2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, GraphOperator, OperatorKind};
use crate::measures::{self, HomophilyMetrics, SmoothnessValues};
use crate::stats::{
    all_pairs_moment_sums, connected_moments, two_proportion_chi2_all, unconnected_moments,
    welch_t_test_all, LabelCounts, TestSummary,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Half-width of the band around `alpha` in which a two-sided p-value is
/// flagged as borderline.
pub const BOUNDARY_BAND: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SmoothnessClass {
    #[serde(rename = "significantly-smooth")]
    SignificantlySmooth,
    #[serde(rename = "significantly-non-smooth")]
    SignificantlyNonSmooth,
    /// No significant difference between connected and unconnected pairs.
    #[serde(rename = "non-smooth")]
    NonSmooth,
}

impl fmt::Display for SmoothnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmoothnessClass::SignificantlySmooth => "significantly-smooth",
            SmoothnessClass::SignificantlyNonSmooth => "significantly-non-smooth",
            SmoothnessClass::NonSmooth => "non-smooth",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "GNN-advantage")]
    GnnAdvantage,
    #[serde(rename = "MLP-advantage")]
    MlpAdvantage,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::GnnAdvantage => "GNN-advantage",
            Verdict::MlpAdvantage => "MLP-advantage",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionConfig {
    pub alpha: f64,
    pub operator: OperatorKind,
    pub row_normalize: bool,
}

impl Default for DecisionConfig {
    fn default() -> Self {
        DecisionConfig {
            alpha: 0.05,
            operator: OperatorKind::RenormRwAffinity,
            row_normalize: false,
        }
    }
}

impl DecisionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.operator.is_laplacian() {
            return Err(Error::invalid(format!(
                "the NTV filter must be an affinity operator, got {}",
                self.operator
            )));
        }
        Ok(())
    }
}

/// Applies the decision rule to one signal's p-values.
///
/// The two-sided test gates: `p_two >= alpha` means no significant
/// difference. Otherwise the one-sided tests decide the direction.
pub fn classify_smoothness(p_two: f64, p_greater: f64, p_less: f64, alpha: f64) -> SmoothnessClass {
    if p_two >= alpha {
        SmoothnessClass::NonSmooth
    } else if p_greater <= alpha {
        SmoothnessClass::SignificantlyNonSmooth
    } else if p_less <= alpha {
        SmoothnessClass::SignificantlySmooth
    } else {
        debug_assert!(
            false,
            "p-values violate p_two = 2 min(one-sided): {p_two}, {p_greater}, {p_less}"
        );
        log::warn!("inconsistent p-values ({p_two}, {p_greater}, {p_less}); reporting non-smooth");
        SmoothnessClass::NonSmooth
    }
}

/// Only significantly smooth labels predict a benefit from the edges.
pub fn verdict(label_class: SmoothnessClass) -> Verdict {
    match label_class {
        SmoothnessClass::SignificantlySmooth => Verdict::GnnAdvantage,
        SmoothnessClass::SignificantlyNonSmooth | SmoothnessClass::NonSmooth => {
            Verdict::MlpAdvantage
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub num_nodes: usize,
    pub num_edges: usize,
    pub num_features: usize,
    pub num_classes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalBlock {
    pub ntv: f64,
    pub nsv: f64,
    pub e_n_graph: f64,
    pub e_n_complement: f64,
    pub p_two_sided: f64,
    pub p_greater: f64,
    pub p_less: f64,
    pub smoothness_class: SmoothnessClass,
    /// Welch t for features, chi-square for labels; absent when infinite.
    pub statistic: Option<f64>,
    pub df: f64,
    pub degenerate_test: bool,
    /// Two-sided p-value lies within [`BOUNDARY_BAND`] of alpha.
    pub near_alpha_boundary: bool,
}

impl SignalBlock {
    fn new(values: SmoothnessValues, test: TestSummary, alpha: f64) -> Self {
        SignalBlock {
            ntv: values.ntv,
            nsv: values.nsv,
            e_n_graph: values.e_n_graph,
            e_n_complement: values.e_n_complement,
            p_two_sided: test.p_two_sided,
            p_greater: test.p_greater,
            p_less: test.p_less,
            smoothness_class: classify_smoothness(
                test.p_two_sided,
                test.p_greater,
                test.p_less,
                alpha,
            ),
            statistic: test.statistic,
            df: test.df,
            degenerate_test: test.degenerate,
            near_alpha_boundary: (test.p_two_sided - alpha).abs() < BOUNDARY_BAND,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoundedPValues {
    pub p_two_sided: f64,
    pub p_greater: f64,
    pub p_less: f64,
}

impl RoundedPValues {
    fn from_block(b: &SignalBlock) -> Self {
        let r = |p: f64| (p * 1e4).round() / 1e4;
        RoundedPValues {
            p_two_sided: r(b.p_two_sided),
            p_greater: r(b.p_greater),
            p_less: r(b.p_less),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisplayBlock {
    pub features: RoundedPValues,
    pub labels: RoundedPValues,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub schema_version: u32,
    pub dataset: String,
    pub graph: GraphSummary,
    pub features: SignalBlock,
    pub labels: SignalBlock,
    pub homophily: HomophilyMetrics,
    pub verdict: Verdict,
    pub config: DecisionConfig,
    pub display: DisplayBlock,
}

fn signal_values(
    g: &AttributedGraph,
    op: &GraphOperator,
    x: ArrayView2<'_, f64>,
) -> Result<SmoothnessValues> {
    measures::smoothness(g, op, x)
}

/// Full analysis of one dataset.
pub fn analyze(g: &AttributedGraph, name: &str, config: &DecisionConfig) -> Result<SmoothnessReport> {
    config.validate()?;
    if g.num_edges() < 2 {
        return Err(Error::degenerate(format!(
            "cannot analyze a graph with {} edges; at least 2 are required",
            g.num_edges()
        )));
    }
    if g.complement_stats().pair_count_unconnected < 2 {
        return Err(Error::degenerate(
            "cannot analyze a complete or near-complete graph: fewer than 2 non-adjacent pairs",
        ));
    }
    let op = GraphOperator::new(g, config.operator)?;

    let normalized;
    let x = if config.row_normalize {
        normalized = measures::row_normalize(g.features()).0;
        normalized.view()
    } else {
        g.features()
    };

    let feature_values = signal_values(g, &op, x)?;
    let all = all_pairs_moment_sums(x)?;
    let connected = connected_moments(g, x)?;
    let unconnected = unconnected_moments(g, x, &all)?;
    let feature_test = welch_t_test_all(&connected, &unconnected)?;

    let z = g.one_hot_labels();
    let label_values = signal_values(g, &op, z.view())?;
    let label_test = two_proportion_chi2_all(&LabelCounts::from_graph(g))?;

    let features = SignalBlock::new(feature_values, feature_test, config.alpha);
    let labels = SignalBlock::new(label_values, label_test, config.alpha);
    for (what, block) in [("features", &features), ("labels", &labels)] {
        if block.near_alpha_boundary {
            log::warn!(
                "{what}: two-sided p-value {:.4} is within {BOUNDARY_BAND} of alpha {}",
                block.p_two_sided,
                config.alpha
            );
        }
    }

    Ok(SmoothnessReport {
        schema_version: SCHEMA_VERSION,
        dataset: name.to_string(),
        graph: GraphSummary {
            num_nodes: g.num_nodes(),
            num_edges: g.num_edges(),
            num_features: g.num_features(),
            num_classes: g.num_classes(),
        },
        display: DisplayBlock {
            features: RoundedPValues::from_block(&features),
            labels: RoundedPValues::from_block(&labels),
        },
        verdict: verdict(labels.smoothness_class),
        features,
        labels,
        homophily: measures::homophily(g)?,
        config: *config,
    })
}
