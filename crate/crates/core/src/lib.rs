//! Random double digraphs `([n], R1, R2)`, their level stratifications, the
//! linear order and arithmetic interpreted on those levels, and a Monte Carlo
//! harness for the quantitative behavior of these objects as `n` grows.
//!
//! ```
//! use stratlab::{sample_double_digraph, stratify, AlphaPair, RngStream};
//!
//! let pair = AlphaPair::new(0.1, 0.2).unwrap();
//! let g = sample_double_digraph(1024, pair, &RngStream::new(7)).unwrap();
//! let s = stratify(&g, 1).unwrap();
//! assert_eq!(s.levels()[0], vec![1]);
//! ```

pub mod error;
pub mod experiment;
pub mod interpretation;
pub mod rng;
pub mod sampler;
pub mod stratification;

/// Nodes are the integers `1..=n`.
pub type Node = usize;

pub use error::{Error, Result};
pub use experiment::{
    convergence_table, estimate_prob, height_survey, load_config, valency_survey, verify_level_bounds,
    BoundsReport, ExperimentConfig, HeightSurvey, OutputFormat, ProbEstimate, ValencyReport,
};
pub use interpretation::{
    arithmetic_segment, build_level_order, eval_sentence, level_compare, level_of, ArithSegment, EvalContext,
    LevelOrder, RootPolicy, Sentence,
};
pub use rng::RngStream;
pub use sampler::{
    edge_probability, open_deferred, sample_double_digraph, sample_gnp, sample_power_law_graph, wrap_eager,
    AlphaPair, DeferredDigraph, DoubleDigraph, Graph, ModelSpec, Relation,
};
pub use stratification::{
    brute_stratify, height_of_graph, height_of_node, height_of_sample, stratify, BiRelationalView, Stratification,
};
