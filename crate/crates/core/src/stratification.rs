//! Level decomposition of a two-relation structure from a root.
//!
//! Starting from `S_0 = {root}`, each step first tries to leave the visited
//! set along `R1` edges out of the current level; only if no such edge exists
//! does it try `R2`. The new level is every unvisited node reached in that one
//! step. When neither relation leaves the visited set the process stops and
//! the index of the last level is the height of the root.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::{DoubleDigraph, Graph, Relation};
use crate::Node;

/// Anything that answers "who are the `R_iota` out-neighbors of `a`".
///
/// `out` takes `&mut self` so lazily sampled structures can draw on demand.
/// Implementations must never list `a` itself and must answer repeated
/// queries identically.
pub trait BiRelationalView {
    fn node_count(&self) -> usize;
    fn out(&mut self, a: Node, rel: Relation) -> &[Node];
}

impl<V: BiRelationalView + ?Sized> BiRelationalView for &mut V {
    fn node_count(&self) -> usize {
        (**self).node_count()
    }

    fn out(&mut self, a: Node, rel: Relation) -> &[Node] {
        (**self).out(a, rel)
    }
}

impl BiRelationalView for &DoubleDigraph {
    fn node_count(&self) -> usize {
        DoubleDigraph::node_count(self)
    }

    fn out(&mut self, a: Node, rel: Relation) -> &[Node] {
        DoubleDigraph::out(self, a, rel)
    }
}

/// Two relations defined on a plain graph by caller-supplied pair predicates.
///
/// Out-sets are computed by scanning all nodes on first request and cached.
pub struct FormulaView<'g, F1, F2> {
    graph: &'g Graph,
    phi1: F1,
    phi2: F2,
    cache: [Vec<Option<Vec<Node>>>; 2],
}

impl<'g, F1, F2> FormulaView<'g, F1, F2>
where
    F1: Fn(&Graph, Node, Node) -> bool,
    F2: Fn(&Graph, Node, Node) -> bool,
{
    pub fn new(graph: &'g Graph, phi1: F1, phi2: F2) -> Self {
        let n = graph.node_count();
        Self {
            graph,
            phi1,
            phi2,
            cache: [vec![None; n], vec![None; n]],
        }
    }
}

impl<F1, F2> BiRelationalView for FormulaView<'_, F1, F2>
where
    F1: Fn(&Graph, Node, Node) -> bool,
    F2: Fn(&Graph, Node, Node) -> bool,
{
    fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    fn out(&mut self, a: Node, rel: Relation) -> &[Node] {
        let graph = self.graph;
        let slot = &mut self.cache[rel.slot()][a - 1];
        if slot.is_none() {
            let holds = |b: Node| match rel {
                Relation::R1 => (self.phi1)(graph, a, b),
                Relation::R2 => (self.phi2)(graph, a, b),
            };
            *slot = Some((1..=graph.node_count()).filter(|&b| b != a && holds(b)).collect());
        }
        slot.as_deref().expect("filled above")
    }
}

/// The levels `S_0, ..., S_h` grown from a root, with the relation used for
/// each step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStratification")]
pub struct Stratification {
    root: Node,
    levels: Vec<Vec<Node>>,
    step_kinds: Vec<Relation>,
    height: usize,
}

#[derive(Deserialize)]
struct RawStratification {
    root: Node,
    levels: Vec<Vec<Node>>,
    step_kinds: Vec<Relation>,
    height: usize,
}

impl TryFrom<RawStratification> for Stratification {
    type Error = Error;
    fn try_from(raw: RawStratification) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidStructure(msg.to_string()));
        if raw.levels.first().map(Vec::as_slice) != Some(&[raw.root][..]) {
            return bad("levels[0] must be [root]");
        }
        if raw.height + 1 != raw.levels.len() || raw.step_kinds.len() != raw.height {
            return bad("height must equal levels.len() - 1 and step_kinds.len()");
        }
        let mut seen = BTreeSet::new();
        for level in &raw.levels {
            if level.is_empty() || !level.windows(2).all(|w| w[0] < w[1]) {
                return bad("levels must be nonempty and strictly ascending");
            }
            if !level.iter().all(|&v| seen.insert(v)) {
                return bad("levels must be pairwise disjoint");
            }
        }
        Ok(Stratification {
            root: raw.root,
            levels: raw.levels,
            step_kinds: raw.step_kinds,
            height: raw.height,
        })
    }
}

impl Stratification {
    pub fn root(&self) -> Node {
        self.root
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Levels in order; each level is sorted ascending.
    pub fn levels(&self) -> &[Vec<Node>] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Option<&[Node]> {
        self.levels.get(k).map(Vec::as_slice)
    }

    /// `step_kinds()[k]` is the relation that produced `S_{k+1}`.
    pub fn step_kinds(&self) -> &[Relation] {
        &self.step_kinds
    }

    pub fn level_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.levels.iter().map(Vec::len)
    }

    /// `|S_0 ∪ ... ∪ S_h|`.
    pub fn total_nodes(&self) -> usize {
        self.level_sizes().sum()
    }

    /// Checks every structural law against `view`; returns the first
    /// violation found.
    pub fn check_against<V: BiRelationalView>(&self, mut view: V) -> std::result::Result<(), String> {
        let n = view.node_count();
        if self.levels.first() != Some(&vec![self.root]) {
            return Err("S_0 is not {root}".into());
        }
        if self.height + 1 != self.levels.len() || self.step_kinds.len() != self.height {
            return Err("height, levels and step kinds disagree".into());
        }
        let mut visited = vec![false; n + 1];
        for (k, level) in self.levels.iter().enumerate() {
            if level.is_empty() {
                return Err(format!("S_{k} is empty"));
            }
            for &v in level {
                if v == 0 || v > n || visited[v] {
                    return Err(format!("node {v} in S_{k} is out of range or repeated"));
                }
                visited[v] = true;
            }
        }
        // Re-scan each step against the nodes visited before it.
        let mut before = vec![false; n + 1];
        for k in 0..=self.height {
            for &v in &self.levels[k] {
                before[v] = true;
            }
            let escaping = |view: &mut V, rel: Relation| -> BTreeSet<Node> {
                let mut found = BTreeSet::new();
                for &a in &self.levels[k] {
                    found.extend(view.out(a, rel).iter().copied().filter(|&b| !before[b]));
                }
                found
            };
            if k == self.height {
                for rel in Relation::BOTH {
                    if !escaping(&mut view, rel).is_empty() {
                        return Err(format!("stopped at {k} but an {rel} edge leaves the visited set"));
                    }
                }
                break;
            }
            let kind = self.step_kinds[k];
            if kind == Relation::R2 && !escaping(&mut view, Relation::R1).is_empty() {
                return Err(format!("step {k} used R2 although an R1 edge escapes"));
            }
            let expected: Vec<Node> = escaping(&mut view, kind).into_iter().collect();
            if expected != self.levels[k + 1] {
                return Err(format!("S_{} is not the full {kind}-frontier of S_{k}", k + 1));
            }
        }
        Ok(())
    }
}

/// Reusable scratch space for repeated stratifications of one view size.
#[derive(Debug, Clone)]
pub struct Stratifier {
    stamp: Vec<u32>,
    epoch: u32,
}

impl Stratifier {
    pub fn new(n: usize) -> Self {
        Self {
            stamp: vec![0; n + 1],
            epoch: 0,
        }
    }

    fn begin(&mut self, n: usize) {
        if self.stamp.len() < n + 1 {
            self.stamp.resize(n + 1, 0);
        }
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    pub fn run<V: BiRelationalView>(&mut self, mut view: V, root: Node) -> Result<Stratification> {
        let n = view.node_count();
        if root == 0 || root > n {
            return Err(Error::NodeOutOfRange { node: root, n });
        }
        self.begin(n);
        let epoch = self.epoch;
        self.stamp[root] = epoch;

        let mut levels = vec![vec![root]];
        let mut step_kinds = Vec::new();
        'grow: loop {
            let k = levels.len() - 1;
            for rel in Relation::BOTH {
                let mut next = Vec::new();
                for &a in &levels[k] {
                    for &b in view.out(a, rel) {
                        if self.stamp[b] != epoch {
                            self.stamp[b] = epoch;
                            next.push(b);
                        }
                    }
                }
                if !next.is_empty() {
                    next.sort_unstable();
                    levels.push(next);
                    step_kinds.push(rel);
                    continue 'grow;
                }
            }
            break;
        }
        let height = levels.len() - 1;
        Ok(Stratification {
            root,
            levels,
            step_kinds,
            height,
        })
    }
}

pub fn stratify<V: BiRelationalView>(view: V, root: Node) -> Result<Stratification> {
    Stratifier::new(view.node_count()).run(view, root)
}

/// Reference implementation: recomputes each level from scratch with
/// ordered sets and linear membership scans. Quadratic or worse; meant for
/// small structures.
pub fn brute_stratify<V: BiRelationalView>(mut view: V, root: Node) -> Result<Stratification> {
    let n = view.node_count();
    if root == 0 || root > n {
        return Err(Error::NodeOutOfRange { node: root, n });
    }
    let mut levels: Vec<BTreeSet<Node>> = vec![BTreeSet::from([root])];
    let mut step_kinds = Vec::new();
    loop {
        let seen: BTreeSet<Node> = levels.iter().flatten().copied().collect();
        let last: Vec<Node> = levels.last().expect("nonempty").iter().copied().collect();
        let mut chosen = None;
        for rel in [Relation::R1, Relation::R2] {
            let mut frontier = BTreeSet::new();
            for b in 1..=n {
                if seen.contains(&b) {
                    continue;
                }
                for &a in &last {
                    if view.out(a, rel).contains(&b) {
                        frontier.insert(b);
                        break;
                    }
                }
            }
            if !frontier.is_empty() {
                chosen = Some((rel, frontier));
                break;
            }
        }
        match chosen {
            Some((rel, frontier)) => {
                step_kinds.push(rel);
                levels.push(frontier);
            }
            None => break,
        }
    }
    let height = levels.len() - 1;
    Ok(Stratification {
        root,
        levels: levels.into_iter().map(|s| s.into_iter().collect()).collect(),
        step_kinds,
        height,
    })
}

pub fn height_of_node<V: BiRelationalView>(view: V, a: Node) -> Result<usize> {
    stratify(view, a).map(|s| s.height())
}

/// Maximum height over every node; roots are processed in parallel.
pub fn height_of_graph(g: &DoubleDigraph) -> usize {
    let n = g.node_count();
    (1..=n)
        .into_par_iter()
        .map_init(
            || Stratifier::new(n),
            |st, a| st.run(g, a).expect("root in range").height(),
        )
        .max()
        .unwrap_or(0)
}

/// Maximum height over the given roots.
pub fn height_of_sample<V: BiRelationalView>(mut view: V, roots: &[Node]) -> Result<usize> {
    if roots.is_empty() {
        return Err(Error::EmptyRoots);
    }
    let mut st = Stratifier::new(view.node_count());
    let mut best = 0;
    for &a in roots {
        best = best.max(st.run(&mut view, a)?.height());
    }
    Ok(best)
}
