use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{require_double_alpha, trial_stream, ExperimentConfig};
use crate::error::Result;
use crate::sampler::{sample_double_digraph, AlphaPair, DeferredDigraph, Relation};
use crate::stratification::{Stratification, Stratifier};
use crate::Node;

/// Level sizes of one stratification, with the relation of each step.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelTrace {
    pub n: usize,
    pub trial: usize,
    pub root: Node,
    pub sizes: Vec<u32>,
    pub kinds: Vec<Relation>,
}

/// One line of `bounds.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: usize,
    pub trial: usize,
    pub root: Node,
    pub k: usize,
    pub level_size: usize,
    pub bound_c1: f64,
    #[serde(rename = "bound_cC")]
    pub bound_c: f64,
    /// `n^((alpha1 + alpha2) / 2)`, filled on rows whose level was expanded
    /// along `R2`.
    pub threshold_mid: Option<f64>,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSummary {
    pub n: usize,
    pub trials: usize,
    pub stratifications: usize,
    pub bound_c1: f64,
    pub bound_c: f64,
    pub threshold_mid: f64,
    /// Trials in which every level of every surveyed stratification fits
    /// under `C · n^(2 alpha2)`.
    pub frac_within: f64,
    /// Trials with some level above `n^(2 alpha2)`.
    pub violation_rate_c1: f64,
    /// Stratifications that got past `S_0`.
    pub frac_nonempty: f64,
    pub max_level_size: usize,
    /// Mean of `|S_0 ∪ ... ∪ S_h|`.
    pub mean_reach: f64,
    pub r2_steps: usize,
    /// `R2` steps taken from a level smaller than `threshold_mid`.
    pub r2_steps_below_threshold: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub alpha: AlphaPair,
    pub slack: f64,
    pub traces: Vec<LevelTrace>,
    pub summaries: Vec<BoundsSummary>,
}

impl BoundsReport {
    /// Expands the traces into one row per level.
    pub fn rows(&self) -> impl Iterator<Item = BoundsRow> + '_ {
        self.traces.iter().flat_map(move |t| {
            let bound_c1 = self.alpha.level_bound(t.n);
            let bound_c = self.slack * bound_c1;
            let threshold = self.alpha.expansion_threshold(t.n);
            t.sizes.iter().enumerate().map(move |(k, &size)| BoundsRow {
                n: t.n,
                trial: t.trial,
                root: t.root,
                k,
                level_size: size as usize,
                bound_c1,
                bound_c,
                threshold_mid: (t.kinds.get(k) == Some(&Relation::R2)).then_some(threshold),
                within: size as f64 <= bound_c,
            })
        })
    }

    pub fn summary(&self, n: usize) -> Option<&BoundsSummary> {
        self.summaries.iter().find(|s| s.n == n)
    }
}

pub fn verify_level_bounds(cfg: &ExperimentConfig) -> Result<BoundsReport> {
    verify_level_bounds_inspect(cfg, |_, _| {})
}

/// [`verify_level_bounds`], handing every stratification to `inspect` as it
/// is produced.
pub fn verify_level_bounds_inspect<F>(cfg: &ExperimentConfig, inspect: F) -> Result<BoundsReport>
where
    F: Fn(usize, &Stratification) + Sync,
{
    cfg.validate()?;
    let alpha = require_double_alpha(&cfg.model, "level-bound verification")?;
    let mut traces = Vec::new();
    let mut summaries = Vec::new();
    for &n in &cfg.n_grid {
        let per_trial: Vec<Vec<LevelTrace>> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| -> Result<Vec<LevelTrace>> {
                let stream = trial_stream(cfg.master_seed, n, t);
                let roots = cfg.root_policy.select(n, &stream);
                let structure = stream.tagged("structure");
                let mut st = Stratifier::new(n);
                let run = |s: Stratification| {
                    inspect(n, &s);
                    LevelTrace {
                        n,
                        trial: t,
                        root: s.root(),
                        sizes: s.level_sizes().map(|x| x as u32).collect(),
                        kinds: s.step_kinds().to_vec(),
                    }
                };
                if cfg.lazy {
                    let mut oracle = DeferredDigraph::with_alpha(n, alpha, structure)?;
                    roots.iter().map(|&r| Ok(run(st.run(&mut oracle, r)?))).collect()
                } else {
                    let g = sample_double_digraph(n, alpha, &structure)?;
                    roots.iter().map(|&r| Ok(run(st.run(&g, r)?))).collect()
                }
            })
            .collect::<Result<_>>()?;
        summaries.push(summarize(n, alpha, cfg.slack_c, &per_trial));
        traces.extend(per_trial.into_iter().flatten());
    }
    Ok(BoundsReport {
        alpha,
        slack: cfg.slack_c,
        traces,
        summaries,
    })
}

fn summarize(n: usize, alpha: AlphaPair, slack: f64, per_trial: &[Vec<LevelTrace>]) -> BoundsSummary {
    let bound_c1 = alpha.level_bound(n);
    let bound_c = slack * bound_c1;
    let threshold_mid = alpha.expansion_threshold(n);
    let trial_max = |t: &[LevelTrace]| t.iter().flat_map(|s| s.sizes.iter().copied()).max().unwrap_or(0) as f64;
    let within = per_trial.iter().filter(|t| trial_max(t) <= bound_c).count();
    let violated_c1 = per_trial.iter().filter(|t| trial_max(t) > bound_c1).count();
    let all: Vec<&LevelTrace> = per_trial.iter().flatten().collect();
    let nonempty = all.iter().filter(|t| t.sizes.len() > 1).count();
    let reach: usize = all.iter().map(|t| t.sizes.iter().map(|&x| x as usize).sum::<usize>()).sum();
    let mut r2_steps = 0;
    let mut below = 0;
    for t in &all {
        for (k, kind) in t.kinds.iter().enumerate() {
            if *kind == Relation::R2 {
                r2_steps += 1;
                if (t.sizes[k] as f64) < threshold_mid {
                    below += 1;
                }
            }
        }
    }
    let trials = per_trial.len();
    let count = all.len().max(1) as f64;
    BoundsSummary {
        n,
        trials,
        stratifications: all.len(),
        bound_c1,
        bound_c,
        threshold_mid,
        frac_within: within as f64 / trials as f64,
        violation_rate_c1: violated_c1 as f64 / trials as f64,
        frac_nonempty: nonempty as f64 / count,
        max_level_size: all.iter().flat_map(|t| t.sizes.iter().copied()).max().unwrap_or(0) as usize,
        mean_reach: reach as f64 / count,
        r2_steps,
        r2_steps_below_threshold: below,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::interpretation::RootPolicy;
    use crate::sampler::ModelSpec;

    fn pair() -> AlphaPair {
        AlphaPair::new(0.1, 0.2).unwrap()
    }

    fn cfg(grid: Vec<usize>, trials: usize) -> ExperimentConfig {
        ExperimentConfig::new(ModelSpec::DoubleAlpha { pair: pair() }, grid, trials, 17)
    }

    #[test]
    fn bound_columns() {
        let report = BoundsReport {
            alpha: pair(),
            slack: 1.0,
            traces: vec![LevelTrace {
                n: 1024,
                trial: 0,
                root: 5,
                sizes: vec![1, 17, 3],
                kinds: vec![Relation::R2, Relation::R1],
            }],
            summaries: vec![],
        };
        let rows: Vec<BoundsRow> = report.rows().collect();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].bound_c1, 16.0);
        assert!((rows[0].threshold_mid.unwrap() - 2f64.powf(1.5)).abs() < 1e-12);
        assert_eq!(rows[1].threshold_mid, None);
        assert!(rows[0].within);
        assert!(!rows[1].within, "a level of 17 exceeds 16 at C = 1");
        assert_eq!(rows[2].threshold_mid, None);
    }

    #[test]
    fn rejects_plain_graph_models() {
        let c = ExperimentConfig::new(ModelSpec::ConstantP { p: 0.1 }, vec![8], 2, 0);
        assert!(matches!(verify_level_bounds(&c), Err(Error::ModelMismatch(_))));
    }

    #[test]
    fn summary_counts() {
        let c = cfg(vec![64, 128], 12).with_roots(RootPolicy::Sample(5));
        let report = verify_level_bounds(&c).unwrap();
        assert_eq!(report.traces.len(), 2 * 12 * 5);
        for s in &report.summaries {
            assert_eq!(s.trials, 12);
            assert_eq!(s.stratifications, 60);
            assert!((0.0..=1.0).contains(&s.frac_within));
            assert!(s.r2_steps_below_threshold <= s.r2_steps);
        }
        let rows = report.rows().count();
        assert_eq!(rows, report.traces.iter().map(|t| t.sizes.len()).sum::<usize>());
    }

    #[test]
    fn inspection_sees_every_stratification() {
        use std::sync::atomic::{AtomicUsize, Ordering};
        let seen = AtomicUsize::new(0);
        let c = cfg(vec![64], 7).with_roots(RootPolicy::Sample(3)).with_lazy(true);
        let report = verify_level_bounds_inspect(&c, |n, _| {
            assert_eq!(n, 64);
            seen.fetch_add(1, Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(seen.into_inner(), 21);
        assert_eq!(report.traces.len(), 21);
    }

    #[test]
    fn deterministic_in_both_modes() {
        for lazy in [false, true] {
            let c = cfg(vec![100], 6).with_lazy(lazy);
            assert_eq!(verify_level_bounds(&c).unwrap(), verify_level_bounds(&c).unwrap());
        }
    }
}
