//! Monte Carlo harness: probability estimates over an `n` grid, level-size
//! bound verification, valency and height surveys.
//!
//! Trial `t` at size `n` draws everything from the stream
//! `(master_seed, [n, t])`, so every report is a pure function of its config
//! regardless of how many threads run the trials.

mod bounds;
pub mod checks;
mod config;
mod estimate;
mod heights;
mod stats;
pub mod tables;
mod valency;

pub use bounds::{verify_level_bounds, verify_level_bounds_inspect, BoundsReport, BoundsRow, BoundsSummary, LevelTrace};
pub use config::{load_config, ExperimentConfig, OutputFormat, OutputSpec};
pub use estimate::{convergence_table, estimate_prob};
pub use heights::{height_survey, height_survey_inspect, loglog_floor, HeightRow, HeightSummary, HeightSurvey};
pub use stats::{median, wilson_interval, ProbEstimate, Z_95};
pub use valency::{valency_survey, valency_survey_inspect, ValencyReport, ValencyRow};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::sampler::{sample_double_digraph, sample_gnp, sample_power_law_graph, AlphaPair, DoubleDigraph, ModelSpec};

/// Stream of trial `trial` at size `n`; structures draw from its `"structure"`
/// tag.
pub fn trial_stream(seed: u64, n: usize, trial: usize) -> RngStream {
    RngStream::new(seed).child(n as u64).child(trial as u64)
}

pub(crate) fn require_double_alpha(model: &ModelSpec, what: &str) -> Result<AlphaPair> {
    model
        .alpha_pair()
        .ok_or_else(|| Error::ModelMismatch(format!("{what} requires the double-alpha model, got {}", model.name())))
}

/// Samples one structure of the configured model as a double digraph.
///
/// Plain graphs are viewed through the adjacency hook: `R1` empty and `R2`
/// the symmetric edge relation.
pub(crate) fn sample_structure(model: &ModelSpec, n: usize, stream: &RngStream) -> Result<DoubleDigraph> {
    let stream = stream.tagged("structure");
    match *model {
        ModelSpec::ConstantP { p } => Ok(DoubleDigraph::adjacency_of(&sample_gnp(n, p, &stream)?)),
        ModelSpec::PowerLaw { alpha } => Ok(DoubleDigraph::adjacency_of(&sample_power_law_graph(n, alpha, &stream)?)),
        ModelSpec::DoubleAlpha { pair } => sample_double_digraph(n, pair, &stream),
    }
}
