use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{median, require_double_alpha, trial_stream, ExperimentConfig};
use crate::error::Result;
use crate::interpretation::RootPolicy;
use crate::sampler::{sample_double_digraph, DeferredDigraph};
use crate::stratification::{height_of_graph, Stratification, Stratifier};

/// `log2(log2(n))`, undefined below `n = 2`.
pub fn loglog_floor(n: usize) -> Option<f64> {
    (n >= 2).then(|| (n as f64).log2().log2())
}

/// One line of `heights.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightRow {
    pub n: usize,
    pub trial: usize,
    pub height: usize,
    pub floor_loglog: Option<f64>,
    pub meets_floor: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightSummary {
    pub n: usize,
    pub trials: usize,
    pub median_height: f64,
    pub floor_loglog: Option<f64>,
    pub frac_meets_floor: Option<f64>,
    /// Mean over trials of the largest `|S_0 ∪ ... ∪ S_h|` among the surveyed
    /// roots (reported only when roots were stratified individually).
    pub mean_reach: Option<f64>,
    /// `n^alpha2`, the scale the reach is compared against.
    pub reach_scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightSurvey {
    pub rows: Vec<HeightRow>,
    pub summaries: Vec<HeightSummary>,
}

impl HeightSurvey {
    pub fn summary(&self, n: usize) -> Option<&HeightSummary> {
        self.summaries.iter().find(|s| s.n == n)
    }
}

impl HeightSummary {
    /// Aggregates per-trial heights (and optional reaches) at one size.
    pub fn from_heights(n: usize, heights: &[usize], reaches: Option<&[usize]>, reach_scale: f64) -> Self {
        let floor = loglog_floor(n);
        let frac = floor.map(|f| heights.iter().filter(|&&h| h as f64 >= f).count() as f64 / heights.len() as f64);
        Self {
            n,
            trials: heights.len(),
            median_height: median(heights),
            floor_loglog: floor,
            frac_meets_floor: frac,
            mean_reach: reaches.map(|r| r.iter().sum::<usize>() as f64 / r.len() as f64),
            reach_scale,
        }
    }
}

pub fn height_survey(cfg: &ExperimentConfig) -> Result<HeightSurvey> {
    height_survey_inspect(cfg, |_, _| {})
}

/// [`height_survey`], handing every stratification to `inspect`. Under the
/// `all` root policy on an eager structure the per-root stratifications are
/// not materialized and `inspect` is not called.
pub fn height_survey_inspect<F>(cfg: &ExperimentConfig, inspect: F) -> Result<HeightSurvey>
where
    F: Fn(usize, &Stratification) + Sync,
{
    cfg.validate()?;
    let alpha = require_double_alpha(&cfg.model, "the height survey")?;
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for &n in &cfg.n_grid {
        let per_trial: Vec<(usize, Option<usize>)> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| -> Result<(usize, Option<usize>)> {
                let stream = trial_stream(cfg.master_seed, n, t);
                let structure = stream.tagged("structure");
                let roots = cfg.root_policy.select(n, &stream);
                let mut st = Stratifier::new(n);
                let mut best = (0, 0);
                let mut track = |s: Stratification| {
                    inspect(n, &s);
                    best = (best.0.max(s.height()), best.1.max(s.total_nodes()));
                };
                if cfg.lazy {
                    let mut oracle = DeferredDigraph::with_alpha(n, alpha, structure)?;
                    for &r in &roots {
                        track(st.run(&mut oracle, r)?);
                    }
                } else {
                    let g = sample_double_digraph(n, alpha, &structure)?;
                    if cfg.root_policy == RootPolicy::All {
                        return Ok((height_of_graph(&g), None));
                    }
                    for &r in &roots {
                        track(st.run(&g, r)?);
                    }
                }
                Ok((best.0, Some(best.1)))
            })
            .collect::<Result<_>>()?;
        let heights: Vec<usize> = per_trial.iter().map(|p| p.0).collect();
        let reaches: Option<Vec<usize>> = per_trial.iter().map(|p| p.1).collect();
        let summary = HeightSummary::from_heights(n, &heights, reaches.as_deref(), alpha.valency_target(n));
        rows.extend(heights.iter().enumerate().map(|(t, &h)| HeightRow {
            n,
            trial: t,
            height: h,
            floor_loglog: summary.floor_loglog,
            meets_floor: summary.floor_loglog.map(|f| h as f64 >= f),
        }));
        summaries.push(summary);
    }
    Ok(HeightSurvey { rows, summaries })
}
