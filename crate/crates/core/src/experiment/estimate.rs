use rayon::prelude::*;

use super::{sample_structure, trial_stream, ExperimentConfig, ProbEstimate};
use crate::error::{Error, Result};
use crate::interpretation::{eval_sentence, EvalContext};

/// Estimates `Prob(G_n satisfies sentence)` for every `n` in the grid.
///
/// Height sentences take their maximum over the config's root policy.
pub fn estimate_prob(cfg: &ExperimentConfig) -> Result<Vec<ProbEstimate>> {
    cfg.validate()?;
    let sentence = cfg.require_sentence()?;
    let label = sentence.to_string();
    cfg.n_grid
        .iter()
        .map(|&n| {
            let outcomes: Vec<bool> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| {
                    let stream = trial_stream(cfg.master_seed, n, t);
                    let g = sample_structure(&cfg.model, n, &stream)?;
                    let ctx = EvalContext {
                        alpha: cfg.model.alpha_pair(),
                        height_roots: cfg.root_policy,
                        stream,
                    };
                    eval_sentence(&g, &sentence, &ctx)
                })
                .collect::<Result<_>>()?;
            let successes = outcomes.iter().filter(|&&b| b).count() as u64;
            Ok(ProbEstimate::from_counts(
                n,
                successes,
                cfg.trials as u64,
                label.clone(),
                cfg.master_seed,
            ))
        })
        .collect()
}

/// [`estimate_prob`] over a grid of at least three sizes, for inspecting how
/// the estimate moves (or fails to settle) as `n` grows.
pub fn convergence_table(cfg: &ExperimentConfig) -> Result<Vec<ProbEstimate>> {
    if cfg.n_grid.len() < 3 {
        return Err(Error::InvalidConfig(vec![format!(
            "n_grid: a convergence table needs at least 3 sizes, got {}",
            cfg.n_grid.len()
        )]));
    }
    estimate_prob(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpretation::{RootPolicy, Sentence};
    use crate::sampler::{AlphaPair, ModelSpec};

    fn double() -> ModelSpec {
        ModelSpec::DoubleAlpha {
            pair: AlphaPair::new(0.1, 0.2).unwrap(),
        }
    }

    #[test]
    fn true_sentence_is_certain() {
        let cfg = ExperimentConfig::new(double(), vec![4, 16, 64], 50, 1).with_sentence(Sentence::TrueConst);
        for e in estimate_prob(&cfg).unwrap() {
            assert_eq!(e.p_hat, 1.0);
            assert_eq!(e.successes, 50);
            assert_eq!(e.ci_high, 1.0);
            // Wilson's floor at p_hat = 1 is N / (N + z^2).
            assert!(e.half_width() <= 0.5 * super::super::Z_95.powi(2) / (50.0 + super::super::Z_95.powi(2)) + 1e-12);
        }
    }

    #[test]
    fn height_at_least_zero_is_certain() {
        let cfg = ExperimentConfig::new(double(), vec![32], 20, 9).with_sentence(Sentence::HeightAtLeast(0));
        assert_eq!(estimate_prob(&cfg).unwrap()[0].p_hat, 1.0);
    }

    #[test]
    fn sentence_is_required() {
        let cfg = ExperimentConfig::new(double(), vec![32], 20, 9);
        assert!(matches!(estimate_prob(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn level_bounds_sentence_rejects_plain_graphs() {
        let cfg = ExperimentConfig::new(ModelSpec::ConstantP { p: 0.5 }, vec![8], 3, 0).with_sentence(
            Sentence::AllLevelBoundsHold {
                roots: RootPolicy::All,
                slack: 4.0,
            },
        );
        assert!(matches!(estimate_prob(&cfg), Err(Error::ModelMismatch(_))));
    }

    #[test]
    fn plain_graph_models_run() {
        let cfg = ExperimentConfig::new(ModelSpec::ConstantP { p: 1.0 }, vec![2, 3, 5], 4, 0)
            .with_sentence(Sentence::R2NonEmpty);
        assert!(estimate_prob(&cfg).unwrap().iter().all(|e| e.p_hat == 1.0));
        let cfg = ExperimentConfig::new(ModelSpec::PowerLaw { alpha: 0.5 }, vec![1], 4, 0)
            .with_sentence(Sentence::R2NonEmpty);
        assert_eq!(estimate_prob(&cfg).unwrap()[0].p_hat, 0.0);
    }

    #[test]
    fn convergence_needs_three_sizes() {
        let cfg = ExperimentConfig::new(double(), vec![8, 16], 5, 0).with_sentence(Sentence::TrueConst);
        assert!(convergence_table(&cfg).is_err());
    }

    #[test]
    fn deterministic() {
        let cfg = ExperimentConfig::new(double(), vec![16, 32, 64], 40, 5).with_sentence(Sentence::HeightParityEven);
        assert_eq!(convergence_table(&cfg).unwrap(), convergence_table(&cfg).unwrap());
    }
}
