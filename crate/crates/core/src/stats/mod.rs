//! Pair-distance moments, Welch's t-test, the two-proportion chi-square test
//! and the distribution functions they rely on.

mod hypothesis;
mod moments;
pub mod special;

pub use hypothesis::{
    two_proportion_chi2, two_proportion_chi2_all, welch_t_test, welch_t_test_all, Alternative,
    TestResult, TestSummary,
};
pub use moments::{
    all_pairs_moment_sums, centered_sum_of_squares, connected_moments, edge_moment_sums,
    unconnected_moments, DistanceMoments, LabelCounts, PairMomentSums,
};
pub use special::{chi2_cdf, normal_cdf, student_t_cdf};
