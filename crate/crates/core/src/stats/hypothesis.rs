use serde::{Deserialize, Serialize};

use super::moments::{DistanceMoments, LabelCounts};
use super::special::{chi2_sf, normal_cdf, normal_sf, student_t_cdf, student_t_sf, student_t_two_tailed};
use crate::error::{Error, Result};

/// Direction of the alternative hypothesis.
///
/// `Greater` is "the connected population has the larger mean distance (or
/// disagreement rate)", i.e. evidence of non-smoothness; `Less` is evidence
/// of smoothness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alternative {
    TwoSided,
    Greater,
    Less,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    /// Welch t, or chi-square for the proportion test. Infinite when a
    /// degenerate Welch test has different means.
    pub statistic: f64,
    pub df: f64,
    pub alternative: Alternative,
    pub p_value: f64,
    /// Zero pooled variance (Welch) or pooled proportion of 0 or 1 (chi-square).
    pub degenerate: bool,
}

/// All three alternatives of one test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestSummary {
    pub statistic: Option<f64>,
    pub df: f64,
    pub p_two_sided: f64,
    pub p_greater: f64,
    pub p_less: f64,
    pub degenerate: bool,
}

impl TestSummary {
    fn from_results(two: TestResult, greater: TestResult, less: TestResult) -> Self {
        TestSummary {
            statistic: two.statistic.is_finite().then_some(two.statistic),
            df: two.df,
            p_two_sided: two.p_value,
            p_greater: greater.p_value,
            p_less: less.p_value,
            degenerate: two.degenerate,
        }
    }
}

/// Welch's unequal-variance t-test on summary statistics.
///
/// `t = (m1 - m2) / sqrt(v1/n1 + v2/n2)` with Welch-Satterthwaite degrees of
/// freedom.
pub fn welch_t_test(
    m1: f64,
    v1: f64,
    n1: u64,
    m2: f64,
    v2: f64,
    n2: u64,
    alternative: Alternative,
) -> Result<TestResult> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::invalid(format!(
            "Welch test needs at least 2 samples per group, got {n1} and {n2}"
        )));
    }
    if !(v1 >= 0.0 && v2 >= 0.0) {
        return Err(Error::invalid(format!("variances must be non-negative, got {v1} and {v2}")));
    }
    let s1 = v1 / n1 as f64;
    let s2 = v2 / n2 as f64;
    let se2 = s1 + s2;
    if se2 == 0.0 {
        let diff = m1 - m2;
        let (statistic, two, greater) = if diff == 0.0 {
            (0.0, 1.0, 0.5)
        } else {
            let p_greater = if diff > 0.0 { 0.0 } else { 1.0 };
            (diff.signum() * f64::INFINITY, 0.0, p_greater)
        };
        let p_value = match alternative {
            Alternative::TwoSided => two,
            Alternative::Greater => greater,
            Alternative::Less => 1.0 - greater,
        };
        return Ok(TestResult {
            statistic,
            df: (n1 + n2 - 2) as f64,
            alternative,
            p_value,
            degenerate: true,
        });
    }
    let t = (m1 - m2) / se2.sqrt();
    let df = se2 * se2 / (s1 * s1 / (n1 as f64 - 1.0) + s2 * s2 / (n2 as f64 - 1.0));
    let p_value = match alternative {
        Alternative::TwoSided => student_t_two_tailed(t, df)?,
        Alternative::Greater => student_t_sf(t, df)?,
        Alternative::Less => student_t_cdf(t, df)?,
    };
    Ok(TestResult {
        statistic: t,
        df,
        alternative,
        p_value,
        degenerate: false,
    })
}

pub fn welch_t_test_all(a: &DistanceMoments, b: &DistanceMoments) -> Result<TestSummary> {
    let run = |alt| welch_t_test(a.mean, a.var, a.n, b.mean, b.var, b.n, alt);
    Ok(TestSummary::from_results(
        run(Alternative::TwoSided)?,
        run(Alternative::Greater)?,
        run(Alternative::Less)?,
    ))
}

/// Two-proportion test on a 2x2 table (connected/unconnected x
/// differing/same), without continuity correction.
///
/// The one-sided variants use the signed root `z = sign(p1 - p2) sqrt(chi2)`
/// against the standard normal.
pub fn two_proportion_chi2(counts: &LabelCounts, alternative: Alternative) -> Result<TestResult> {
    let LabelCounts { k1, n1, k2, n2 } = *counts;
    if n1 == 0 || n2 == 0 {
        return Err(Error::invalid(format!(
            "proportion test needs non-empty groups, got n1={n1}, n2={n2}"
        )));
    }
    if k1 > n1 || k2 > n2 {
        return Err(Error::invalid(format!(
            "counts exceed group sizes: {k1}/{n1}, {k2}/{n2}"
        )));
    }
    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let pooled = (k1 + k2) as f64 / (n1f + n2f);
    let degenerate = k1 + k2 == 0 || k1 + k2 == n1 + n2;
    let z = if degenerate {
        0.0
    } else {
        let diff = k1 as f64 / n1f - k2 as f64 / n2f;
        diff / (pooled * (1.0 - pooled) * (1.0 / n1f + 1.0 / n2f)).sqrt()
    };
    let statistic = z * z;
    let p_value = match alternative {
        Alternative::TwoSided => chi2_sf(statistic, 1.0)?,
        Alternative::Greater => normal_sf(z),
        Alternative::Less => normal_cdf(z),
    };
    Ok(TestResult {
        statistic,
        df: 1.0,
        alternative,
        p_value,
        degenerate,
    })
}

pub fn two_proportion_chi2_all(counts: &LabelCounts) -> Result<TestSummary> {
    Ok(TestSummary::from_results(
        two_proportion_chi2(counts, Alternative::TwoSided)?,
        two_proportion_chi2(counts, Alternative::Greater)?,
        two_proportion_chi2(counts, Alternative::Less)?,
    ))
}
