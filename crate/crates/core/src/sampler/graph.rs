use serde::{Deserialize, Serialize};

use super::{bernoulli_subset, pow_n, check_exponent, check_probability};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::Node;

/// Undirected simple graph on `1..=n`. Edges are stored as `(a, b)` with
/// `a < b`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(Node, Node)>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(Node, Node)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.n, raw.edges)
    }
}

impl Graph {
    /// Builds a graph from unordered pairs; orientation and duplicates are
    /// normalized away.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Node, Node)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        let mut normalized = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::NodeOutOfRange { node: v, n });
                }
            }
            if a == b {
                return Err(Error::InvalidStructure(format!("self-loop at node {a}")));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Self { n, edges: normalized })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: Node, b: Node) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// Position of the unordered pair `{a, b}` (1-based, `a < b`) in the
/// enumeration `{1,2}, {1,3}, {2,3}, {1,4}, ...`.
pub(crate) fn unordered_pair_at(index: u64) -> (Node, Node) {
    // Largest hi with hi * (hi - 1) / 2 <= index (0-based hi).
    let mut hi = ((1.0 + (1.0 + 8.0 * index as f64).sqrt()) / 2.0) as u64;
    while hi * (hi - 1) / 2 > index {
        hi -= 1;
    }
    while (hi + 1) * hi / 2 <= index {
        hi += 1;
    }
    let lo = index - hi * (hi - 1) / 2;
    (lo as Node + 1, hi as Node + 1)
}

/// `G(n, p)`: every unordered pair present independently with probability `p`.
pub fn sample_gnp(n: usize, p: f64, stream: &RngStream) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    check_probability(p)?;
    let pairs = (n as u64) * (n as u64 - 1) / 2;
    let mut rng = stream.rng();
    let mut edges: Vec<(Node, Node)> = bernoulli_subset(&mut rng, pairs, p)
        .into_iter()
        .map(unordered_pair_at)
        .collect();
    edges.sort_unstable();
    Ok(Graph { n, edges })
}

/// `G(n, n^-alpha)`.
pub fn sample_power_law_graph(n: usize, alpha: f64, stream: &RngStream) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    check_exponent(alpha)?;
    sample_gnp(n, pow_n(n, -alpha), stream)
}
