use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{require_double_alpha, trial_stream, ExperimentConfig};
use crate::error::Result;
use crate::sampler::{sample_double_digraph, DoubleDigraph, Relation};

/// One line of `valency.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValencyRow {
    pub n: usize,
    pub trials: usize,
    pub mean_deg2: f64,
    /// `n^alpha2`.
    pub target: f64,
    pub band_lo: f64,
    pub band_hi: f64,
    pub frac_in_band: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValencyReport {
    pub rows: Vec<ValencyRow>,
}

impl ValencyReport {
    pub fn row(&self, n: usize) -> Option<&ValencyRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Band `[target / 4, 4 · target]` around `n^alpha2`.
pub const BAND_FACTOR: f64 = 4.0;

pub fn valency_survey(cfg: &ExperimentConfig) -> Result<ValencyReport> {
    valency_survey_inspect(cfg, |_| {})
}

/// [`valency_survey`], handing every sampled structure to `inspect`.
pub fn valency_survey_inspect<F>(cfg: &ExperimentConfig, inspect: F) -> Result<ValencyReport>
where
    F: Fn(&DoubleDigraph) + Sync,
{
    cfg.validate()?;
    let alpha = require_double_alpha(&cfg.model, "the valency survey")?;
    let mut rows = Vec::new();
    for &n in &cfg.n_grid {
        let target = alpha.valency_target(n);
        let (band_lo, band_hi) = (target / BAND_FACTOR, target * BAND_FACTOR);
        // (sum of R2 out-degrees, nodes inside the band) per trial
        let (degree_sum, in_band) = (0..cfg.trials)
            .into_par_iter()
            .map(|t| -> Result<(usize, usize)> {
                let g = sample_double_digraph(n, alpha, &trial_stream(cfg.master_seed, n, t).tagged("structure"))?;
                inspect(&g);
                let degrees = g.nodes().map(|a| g.out(a, Relation::R2).len());
                Ok(degrees.fold((0, 0), |(sum, band), d| {
                    let inside = (band_lo..=band_hi).contains(&(d as f64));
                    (sum + d, band + usize::from(inside))
                }))
            })
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
        let samples = (n * cfg.trials) as f64;
        let (mean_deg2, frac_in_band) = if n == 1 {
            (0.0, 0.0)
        } else {
            (degree_sum as f64 / samples, in_band as f64 / samples)
        };
        rows.push(ValencyRow {
            n,
            trials: cfg.trials,
            mean_deg2,
            target,
            band_lo,
            band_hi,
            frac_in_band,
        });
    }
    Ok(ValencyReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::sampler::{AlphaPair, ModelSpec};

    fn cfg(grid: Vec<usize>, trials: usize) -> ExperimentConfig {
        ExperimentConfig::new(
            ModelSpec::DoubleAlpha {
                pair: AlphaPair::new(0.1, 0.2).unwrap(),
            },
            grid,
            trials,
            3,
        )
    }

    #[test]
    fn single_node_convention() {
        let r = valency_survey(&cfg(vec![1], 3)).unwrap();
        assert_eq!(r.rows[0].mean_deg2, 0.0);
        assert_eq!(r.rows[0].frac_in_band, 0.0);
    }

    #[test]
    fn at_1024() {
        // Target 4 exactly; mean degree 1023 / 256 ~ 3.996; band [1, 16]
        // misses mostly degree 0, P ~ e^-4 ~ 0.018.
        let r = valency_survey(&cfg(vec![1024], 20)).unwrap();
        let row = &r.rows[0];
        assert_eq!(row.target, 4.0);
        assert_eq!((row.band_lo, row.band_hi), (1.0, 16.0));
        // sd of the pooled mean: sqrt(4 / 20480) ~ 0.014
        assert!((row.mean_deg2 - 1023.0 / 256.0).abs() < 0.07, "{}", row.mean_deg2);
        assert!((row.frac_in_band - 0.982).abs() < 0.01, "{}", row.frac_in_band);
    }

    #[test]
    fn rejects_plain_graph_models() {
        let c = ExperimentConfig::new(ModelSpec::PowerLaw { alpha: 0.5 }, vec![8], 2, 0);
        assert!(matches!(valency_survey(&c), Err(Error::ModelMismatch(_))));
    }
}
