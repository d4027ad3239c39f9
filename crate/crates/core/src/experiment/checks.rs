//! Pass/fail checks over survey reports, shared by the CLI `--assert` flag
//! and the acceptance suite.

use std::fmt;

use serde::Serialize;

use super::{BoundsReport, HeightSurvey, ProbEstimate, ValencyReport};
use crate::sampler::AlphaPair;

/// Minimum fraction of trials whose levels all fit under `C · n^(2 alpha2)`.
pub const LEVEL_BOUND_MIN_FRACTION: f64 = 0.90;
/// Allowed relative error of the mean `R2` out-degree against `(n-1) n^(alpha2-1)`.
pub const VALENCY_MEAN_TOLERANCE: f64 = 0.05;
/// Minimum fraction of nodes whose `R2` out-degree lies in the band.
pub const VALENCY_BAND_MIN_FRACTION: f64 = 0.95;
/// Largest acceptable Wilson half-width.
pub const MAX_CI_HALF_WIDTH: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {}: {}", self.name, self.detail)
    }
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

fn monotone(values: &[f64], nondecreasing: bool) -> bool {
    values.windows(2).all(|w| if nondecreasing { w[0] <= w[1] } else { w[0] >= w[1] })
}

pub fn level_bound_checks(report: &BoundsReport) -> Vec<CheckOutcome> {
    let mut out: Vec<CheckOutcome> = report
        .summaries
        .iter()
        .map(|s| {
            CheckOutcome::new(
                format!("level bound C={} at n={}", report.slack, s.n),
                s.frac_within >= LEVEL_BOUND_MIN_FRACTION,
                format!(
                    "{:.4} of {} trials within {:.3} (need >= {LEVEL_BOUND_MIN_FRACTION})",
                    s.frac_within, s.trials, s.bound_c
                ),
            )
        })
        .collect();
    let rates: Vec<f64> = report.summaries.iter().map(|s| s.violation_rate_c1).collect();
    out.push(CheckOutcome::new(
        "C=1 violation rate nonincreasing in n",
        monotone(&rates, false),
        format!("rates {rates:?}"),
    ));
    out
}

pub fn height_floor_checks(survey: &HeightSurvey) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut fracs = Vec::new();
    for s in &survey.summaries {
        match (s.floor_loglog, s.frac_meets_floor) {
            (Some(floor), Some(frac)) => {
                out.push(CheckOutcome::new(
                    format!("median height >= log2 log2 n at n={}", s.n),
                    s.median_height >= floor,
                    format!("median {} vs floor {floor:.4}", s.median_height),
                ));
                fracs.push(frac);
            }
            _ => out.push(CheckOutcome::new(
                format!("height floor at n={}", s.n),
                true,
                "floor undefined below n = 2; skipped",
            )),
        }
    }
    out.push(CheckOutcome::new(
        "fraction meeting the floor nondecreasing in n",
        monotone(&fracs, true),
        format!("fractions {fracs:?}"),
    ));
    out
}

/// Exact mean `R2` out-degree, `(n - 1) · n^(alpha2 - 1)`.
pub fn expected_mean_degree(n: usize, alpha: AlphaPair) -> f64 {
    (n as f64 - 1.0) * crate::sampler::pow_n(n, alpha.alpha2() - 1.0)
}

pub fn valency_checks(report: &ValencyReport, alpha: AlphaPair) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for r in &report.rows {
        let expected = expected_mean_degree(r.n, alpha);
        let rel = if expected > 0.0 {
            (r.mean_deg2 - expected).abs() / expected
        } else {
            0.0
        };
        out.push(CheckOutcome::new(
            format!("mean R2 degree at n={}", r.n),
            rel <= VALENCY_MEAN_TOLERANCE,
            format!("mean {:.4} vs {expected:.4} (relative error {rel:.4})", r.mean_deg2),
        ));
        out.push(CheckOutcome::new(
            format!("R2 degree band at n={}", r.n),
            r.frac_in_band >= VALENCY_BAND_MIN_FRACTION,
            format!(
                "{:.4} of nodes in [{:.3}, {:.3}] (need >= {VALENCY_BAND_MIN_FRACTION})",
                r.frac_in_band, r.band_lo, r.band_hi
            ),
        ));
    }
    out
}

pub fn precision_checks(estimates: &[ProbEstimate]) -> Vec<CheckOutcome> {
    estimates
        .iter()
        .map(|e| {
            CheckOutcome::new(
                format!("CI half-width at n={}", e.n),
                e.half_width() <= MAX_CI_HALF_WIDTH,
                format!("p_hat {:.4}, half-width {:.4}", e.p_hat, e.half_width()),
            )
        })
        .collect()
}
