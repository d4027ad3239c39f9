//! Staged edge revelation.
//!
//! A [`DeferredDigraph`] draws the out-neighborhood of `(a, iota)` only when
//! an algorithm first asks for it. Each neighborhood is a fresh Bernoulli
//! subset of the other `n - 1` nodes, keyed by its own sub-stream, so the
//! revealed structure has the eager law no matter in which order the
//! questions are asked.

use super::digraph::other_node;
use super::{bernoulli_subset, check_probability, relation_probability, AlphaPair, DoubleDigraph, Relation};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::stratification::BiRelationalView;
use crate::Node;

#[derive(Debug, Clone)]
pub struct DeferredDigraph {
    n: usize,
    p: [f64; 2],
    stream: RngStream,
    revealed: [Vec<Option<Vec<Node>>>; 2],
}

/// Opens an oracle on `1..=n` with nothing revealed yet.
pub fn open_deferred(n: usize, p1: f64, p2: f64, stream: RngStream) -> Result<DeferredDigraph> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    check_probability(p1)?;
    check_probability(p2)?;
    Ok(DeferredDigraph {
        n,
        p: [p1, p2],
        stream,
        revealed: [vec![None; n], vec![None; n]],
    })
}

impl DeferredDigraph {
    /// Oracle with the `G(n, pair)` probabilities.
    pub fn with_alpha(n: usize, pair: AlphaPair, stream: RngStream) -> Result<Self> {
        let pair = AlphaPair::new(pair.alpha1(), pair.alpha2())?;
        let n_eff = n.max(1);
        open_deferred(
            n,
            relation_probability(n_eff, pair, Relation::R1),
            relation_probability(n_eff, pair, Relation::R2),
            stream,
        )
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn probability(&self, rel: Relation) -> f64 {
        self.p[rel.slot()]
    }

    /// Out-neighbors of `a` under `R_iota`, drawn on first request and fixed
    /// afterwards.
    pub fn reveal_out(&mut self, a: Node, iota: i64) -> Result<&[Node]> {
        let rel = Relation::from_index(iota)?;
        if a == 0 || a > self.n {
            return Err(Error::NodeOutOfRange { node: a, n: self.n });
        }
        Ok(self.reveal(a, rel))
    }

    pub(crate) fn reveal(&mut self, a: Node, rel: Relation) -> &[Node] {
        let slot = &mut self.revealed[rel.slot()][a - 1];
        if slot.is_none() {
            let mut rng = self.stream.child(a as u64).tagged(rel.tag()).rng();
            let drawn = bernoulli_subset(&mut rng, self.n as u64 - 1, self.p[rel.slot()])
                .into_iter()
                .map(|j| other_node(a, j))
                .collect();
            *slot = Some(drawn);
        }
        slot.as_deref().expect("revealed above")
    }

    pub fn is_revealed(&self, a: Node, rel: Relation) -> bool {
        self.revealed[rel.slot()]
            .get(a.wrapping_sub(1))
            .is_some_and(Option::is_some)
    }

    pub fn revealed_count(&self) -> usize {
        self.revealed.iter().flatten().filter(|s| s.is_some()).count()
    }

    /// Reveals every neighborhood and returns the resulting structure.
    pub fn reveal_all(mut self) -> DoubleDigraph {
        for a in 1..=self.n {
            for rel in Relation::BOTH {
                self.reveal(a, rel);
            }
        }
        let [r1, r2] = self.revealed.map(|lists| lists.into_iter().map(Option::unwrap_or_default).collect());
        DoubleDigraph::from_sorted_lists(self.n, r1, r2)
    }
}

impl BiRelationalView for DeferredDigraph {
    fn node_count(&self) -> usize {
        self.n
    }

    fn out(&mut self, a: Node, rel: Relation) -> &[Node] {
        self.reveal(a, rel)
    }
}

/// An eager structure behind the oracle interface; no randomness.
#[derive(Debug, Clone, Copy)]
pub struct EagerOracle<'g> {
    graph: &'g DoubleDigraph,
}

pub fn wrap_eager(graph: &DoubleDigraph) -> EagerOracle<'_> {
    EagerOracle { graph }
}

impl<'g> EagerOracle<'g> {
    pub fn reveal_out(&mut self, a: Node, iota: i64) -> Result<&'g [Node]> {
        let rel = Relation::from_index(iota)?;
        if a == 0 || a > self.graph.node_count() {
            return Err(Error::NodeOutOfRange {
                node: a,
                n: self.graph.node_count(),
            });
        }
        Ok(self.graph.out(a, rel))
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }
}

impl BiRelationalView for EagerOracle<'_> {
    fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    fn out(&mut self, a: Node, rel: Relation) -> &[Node] {
        self.graph.out(a, rel)
    }
}
