use serde::{Deserialize, Serialize};

use super::{bernoulli_subset, relation_probability, AlphaPair, Graph, Relation};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::Node;

/// The structure `([n], R1, R2)`: two irreflexive directed relations on
/// `1..=n`, stored as sorted out-neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairLists", into = "PairLists")]
pub struct DoubleDigraph {
    n: usize,
    // out[rel.slot()][a - 1]
    out: [Vec<Vec<Node>>; 2],
}

/// JSON shape: `{"n": .., "r1": [[a, b], ..], "r2": [[a, b], ..]}` with pairs
/// sorted lexicographically.
#[derive(Serialize, Deserialize)]
struct PairLists {
    n: usize,
    r1: Vec<(Node, Node)>,
    r2: Vec<(Node, Node)>,
}

impl TryFrom<PairLists> for DoubleDigraph {
    type Error = Error;
    fn try_from(raw: PairLists) -> Result<Self> {
        DoubleDigraph::from_pairs(raw.n, raw.r1, raw.r2)
    }
}

impl From<DoubleDigraph> for PairLists {
    fn from(g: DoubleDigraph) -> Self {
        PairLists {
            n: g.n,
            r1: g.pairs(Relation::R1).collect(),
            r2: g.pairs(Relation::R2).collect(),
        }
    }
}

impl DoubleDigraph {
    /// Structure with both relations empty.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_pairs(n, [], [])
    }

    pub fn from_pairs(
        n: usize,
        r1: impl IntoIterator<Item = (Node, Node)>,
        r2: impl IntoIterator<Item = (Node, Node)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        let mut out = [vec![Vec::new(); n], vec![Vec::new(); n]];
        for (slot, pairs) in [(0, r1.into_iter().collect::<Vec<_>>()), (1, r2.into_iter().collect())] {
            for (a, b) in pairs {
                for v in [a, b] {
                    if v == 0 || v > n {
                        return Err(Error::NodeOutOfRange { node: v, n });
                    }
                }
                if a == b {
                    return Err(Error::InvalidStructure(format!(
                        "R{} is irreflexive but contains ({a}, {a})",
                        slot + 1
                    )));
                }
                out[slot][a - 1].push(b);
            }
        }
        for list in out.iter_mut().flatten() {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { n, out })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> {
        1..=self.n
    }

    /// Sorted out-neighbors of `a` under `rel`. Panics if `a` is out of range.
    pub fn out(&self, a: Node, rel: Relation) -> &[Node] {
        &self.out[rel.slot()][a - 1]
    }

    pub fn has_edge(&self, a: Node, b: Node, rel: Relation) -> bool {
        (1..=self.n).contains(&a) && self.out(a, rel).binary_search(&b).is_ok()
    }

    pub fn edge_count(&self, rel: Relation) -> usize {
        self.out[rel.slot()].iter().map(Vec::len).sum()
    }

    /// All pairs of `rel` in lexicographic order.
    pub fn pairs(&self, rel: Relation) -> impl Iterator<Item = (Node, Node)> + '_ {
        self.out[rel.slot()]
            .iter()
            .enumerate()
            .flat_map(|(i, bs)| bs.iter().map(move |&b| (i + 1, b)))
    }

    /// A plain graph seen as a double digraph: `R1` empty, `R2` holding both
    /// orientations of every edge.
    pub fn adjacency_of(graph: &Graph) -> Self {
        let n = graph.node_count();
        let mut r2 = vec![Vec::new(); n];
        for &(a, b) in graph.edges() {
            r2[a - 1].push(b);
            r2[b - 1].push(a);
        }
        for list in &mut r2 {
            list.sort_unstable();
        }
        Self::from_sorted_lists(n, vec![Vec::new(); n], r2)
    }

    pub(crate) fn from_sorted_lists(n: usize, r1: Vec<Vec<Node>>, r2: Vec<Vec<Node>>) -> Self {
        debug_assert!(r1.len() == n && r2.len() == n);
        Self { n, out: [r1, r2] }
    }
}

/// Maps a slot in `0..n(n-1)` to the ordered pair `(a, b)`, `a != b`, in
/// lexicographic order.
pub(crate) fn ordered_pair_at(n: usize, index: u64) -> (Node, Node) {
    let others = n as u64 - 1;
    let a = index / others;
    let j = index % others;
    let b = if j < a { j } else { j + 1 };
    (a as Node + 1, b as Node + 1)
}

/// Skips over `a` when mapping `0..n-1` onto the other nodes.
pub(crate) fn other_node(a: Node, j: u64) -> Node {
    let j = j as Node + 1;
    if j < a {
        j
    } else {
        j + 1
    }
}

fn sample_relation(n: usize, p: f64, stream: &RngStream) -> Vec<Vec<Node>> {
    let mut lists = vec![Vec::new(); n];
    let slots = n as u64 * (n as u64 - 1);
    let mut rng = stream.rng();
    for index in bernoulli_subset(&mut rng, slots, p) {
        let (a, b) = ordered_pair_at(n, index);
        lists[a - 1].push(b);
    }
    lists
}

/// Eagerly samples `G(n, pair)`: every ordered pair `(a, b)` with `a != b`
/// joins `R1` with probability `n^-(1+alpha1)` and `R2` with probability
/// `n^-(1-alpha2)`, all `2 n (n-1)` memberships independent.
pub fn sample_double_digraph(n: usize, pair: AlphaPair, stream: &RngStream) -> Result<DoubleDigraph> {
    let pair = AlphaPair::new(pair.alpha1(), pair.alpha2())?;
    sample_double_digraph_with(
        n,
        relation_probability(n.max(1), pair, Relation::R1),
        relation_probability(n.max(1), pair, Relation::R2),
        stream,
    )
}

/// Eager sampler with explicit per-pair probabilities.
pub fn sample_double_digraph_with(n: usize, p1: f64, p2: f64, stream: &RngStream) -> Result<DoubleDigraph> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    super::check_probability(p1)?;
    super::check_probability(p2)?;
    let r1 = sample_relation(n, p1, &stream.tagged(Relation::R1.tag()));
    let r2 = sample_relation(n, p2, &stream.tagged(Relation::R2.tag()));
    Ok(DoubleDigraph::from_sorted_lists(n, r1, r2))
}
