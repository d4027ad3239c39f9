//! Random structure generators: `G(n, p)`, `G(n, n^-alpha)`, and the double
//! digraph `([n], R1, R2)` with independent irreflexive edge draws.
//!
//! Every sampler draws the edge count from its exact binomial law and then
//! places that many distinct pairs uniformly at random. Conditional on the
//! count, a uniform placement is exactly the law of independent per-pair
//! Bernoulli trials, so the result has the same distribution while costing
//! time proportional to the number of edges rather than to `n^2`.
//!
//! Nodes are the integers `1..=n`.

mod deferred;
mod digraph;
mod graph;

use std::fmt;

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use deferred::{open_deferred, wrap_eager, DeferredDigraph, EagerOracle};
pub use digraph::{sample_double_digraph, DoubleDigraph};
pub use graph::{sample_gnp, sample_power_law_graph, Graph};

/// Exponent pair `(alpha1, alpha2)` with `0 < alpha1 < alpha2 < 1/4`.
///
/// `R1` pairs are drawn with probability `n^-(1 + alpha1)` and `R2` pairs with
/// `n^-(1 - alpha2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAlphaPair", into = "RawAlphaPair")]
pub struct AlphaPair {
    alpha1: f64,
    alpha2: f64,
}

#[derive(Serialize, Deserialize)]
struct RawAlphaPair {
    alpha1: f64,
    alpha2: f64,
}

impl TryFrom<RawAlphaPair> for AlphaPair {
    type Error = Error;
    fn try_from(raw: RawAlphaPair) -> Result<Self> {
        AlphaPair::new(raw.alpha1, raw.alpha2)
    }
}

impl From<AlphaPair> for RawAlphaPair {
    fn from(p: AlphaPair) -> Self {
        RawAlphaPair {
            alpha1: p.alpha1,
            alpha2: p.alpha2,
        }
    }
}

impl AlphaPair {
    pub fn new(alpha1: f64, alpha2: f64) -> Result<Self> {
        if 0.0 < alpha1 && alpha1 < alpha2 && alpha2 < 0.25 {
            Ok(Self { alpha1, alpha2 })
        } else {
            Err(Error::InvalidAlphaPair { alpha1, alpha2 })
        }
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    /// Exponent `e` with `P(R_iota(a, b)) = n^-e`.
    pub fn edge_exponent(&self, rel: Relation) -> f64 {
        match rel {
            Relation::R1 => 1.0 + self.alpha1,
            Relation::R2 => 1.0 - self.alpha2,
        }
    }

    /// `n^(2 alpha2)`: the level-size scale.
    pub fn level_bound(&self, n: usize) -> f64 {
        pow_n(n, 2.0 * self.alpha2)
    }

    /// `n^((alpha1 + alpha2) / 2)`: the level size below which an `R2`
    /// expansion is expected to happen.
    pub fn expansion_threshold(&self, n: usize) -> f64 {
        pow_n(n, (self.alpha1 + self.alpha2) / 2.0)
    }

    /// `n^alpha2`: the typical `R2` out-degree.
    pub fn valency_target(&self, n: usize) -> f64 {
        pow_n(n, self.alpha2)
    }
}

/// One of the two edge relations of a double digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u8")]
pub enum Relation {
    R1,
    R2,
}

impl Relation {
    pub const BOTH: [Relation; 2] = [Relation::R1, Relation::R2];

    pub fn from_index(iota: i64) -> Result<Self> {
        match iota {
            1 => Ok(Relation::R1),
            2 => Ok(Relation::R2),
            other => Err(Error::InvalidRelation(other)),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Relation::R1 => 1,
            Relation::R2 => 2,
        }
    }

    pub(crate) fn slot(self) -> usize {
        usize::from(self.index() - 1)
    }

    pub(crate) fn tag(self) -> &'static str {
        match self {
            Relation::R1 => "r1",
            Relation::R2 => "r2",
        }
    }
}

impl TryFrom<i64> for Relation {
    type Error = Error;
    fn try_from(v: i64) -> Result<Self> {
        Relation::from_index(v)
    }
}

impl From<Relation> for u8 {
    fn from(r: Relation) -> u8 {
        r.index()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.index())
    }
}

/// The three random-structure families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelSpec {
    /// `G(n, p)` with a constant edge probability.
    #[serde(rename = "gnp")]
    ConstantP { p: f64 },
    /// `G(n, n^-alpha)`. Irrationality of `alpha` matters for the theory but
    /// cannot be represented by a float, so any value in `(0, 1)` is accepted.
    PowerLaw { alpha: f64 },
    /// The double digraph `G(n, (alpha1, alpha2))`.
    DoubleAlpha {
        #[serde(flatten)]
        pair: AlphaPair,
    },
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelSpec::ConstantP { p } => check_probability(p),
            ModelSpec::PowerLaw { alpha } => check_exponent(alpha),
            ModelSpec::DoubleAlpha { pair } => AlphaPair::new(pair.alpha1, pair.alpha2).map(|_| ()),
        }
    }

    pub fn alpha_pair(&self) -> Option<AlphaPair> {
        match *self {
            ModelSpec::DoubleAlpha { pair } => Some(pair),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::ConstantP { .. } => "gnp",
            ModelSpec::PowerLaw { .. } => "power-law",
            ModelSpec::DoubleAlpha { .. } => "double-alpha",
        }
    }
}

/// Probability that an ordered pair lies in `R_iota` for `G(n, pair)`.
pub fn edge_probability(n: usize, pair: AlphaPair, iota: i64) -> Result<f64> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    let rel = Relation::from_index(iota)?;
    let pair = AlphaPair::new(pair.alpha1, pair.alpha2)?;
    Ok(relation_probability(n, pair, rel))
}

pub(crate) fn relation_probability(n: usize, pair: AlphaPair, rel: Relation) -> f64 {
    pow_n(n, -pair.edge_exponent(rel))
}

/// `n^e`, computed as `2^(e log2 n)` so powers of two come out exact.
pub fn pow_n(n: usize, e: f64) -> f64 {
    ((n as f64).log2() * e).exp2()
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

pub(crate) fn check_exponent(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(alpha))
    }
}

/// Chooses each of `universe` slots independently with probability `p`,
/// returned as sorted slot indices.
pub(crate) fn bernoulli_subset<R: Rng + ?Sized>(rng: &mut R, universe: u64, p: f64) -> Vec<u64> {
    let count = if universe == 0 || p <= 0.0 {
        0
    } else if p >= 1.0 {
        universe
    } else {
        Binomial::new(universe, p)
            .expect("probability checked by caller")
            .sample(rng)
    };
    let mut picked: Vec<u64> = if count == universe {
        (0..universe).collect()
    } else {
        rand::seq::index::sample(rng, universe as usize, count as usize)
            .into_iter()
            .map(|i| i as u64)
            .collect()
    };
    picked.sort_unstable();
    picked
}
