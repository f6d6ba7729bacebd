//! Edge-bias diagnostics for attributed graphs.
//!
//! Given a graph with node features and labels, this crate measures how
//! smooth each signal is over the edges (NTV and NSV), tests whether
//! connected pairs are closer than unconnected pairs, and turns the label
//! test into a verdict on whether a graph-aware model is likely to beat a
//! graph-agnostic one. A linear-model verifier and an SBM generator support
//! checking the verdict empirically.

pub mod advisor;
pub mod error;
pub mod graph;
pub mod io;
pub mod measures;
pub mod numeric;
pub mod selfcheck;
pub mod stats;
pub mod synth;
pub mod verifier;

pub use advisor::{analyze, DecisionConfig, SmoothnessClass, SmoothnessReport, Verdict};
pub use error::{Error, Result};
pub use graph::{AttributedGraph, GraphOperator, OperatorKind};
