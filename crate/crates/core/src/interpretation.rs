//! Structures interpreted on top of stratifications: level membership, the
//! 4-ary level comparison, the induced linear order on levels, the initial
//! segment of arithmetic built from that order, and the fixed sentence menu.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::sampler::{AlphaPair, DoubleDigraph, Relation};
use crate::stratification::{height_of_graph, height_of_sample, Stratification, Stratifier};
use crate::Node;

/// Index `k` with `b ∈ S_k`, if `b` was reached at all.
pub fn level_of(s: &Stratification, b: Node) -> Option<usize> {
    let mut found = None;
    for (k, level) in s.levels().iter().enumerate() {
        if level.binary_search(&b).is_ok() {
            debug_assert!(found.is_none(), "levels overlap at node {b}");
            found = Some(k);
            if !cfg!(debug_assertions) {
                break;
            }
        }
    }
    found
}

/// The relation `{(a1, b1, a2, b2) : b1 ∈ S_{a1,k1}, b2 ∈ S_{a2,k2}, k1 <= k2}`.
///
/// False when either node has no level in its root's stratification.
pub fn level_compare(g: &DoubleDigraph, a1: Node, b1: Node, a2: Node, b2: Node) -> Result<bool> {
    LevelComparator::new(g).compare(a1, b1, a2, b2)
}

/// [`level_compare`] with a per-root cache of stratifications.
pub struct LevelComparator<'g> {
    graph: &'g DoubleDigraph,
    stratifier: Stratifier,
    cache: HashMap<Node, Stratification>,
}

impl<'g> LevelComparator<'g> {
    pub fn new(graph: &'g DoubleDigraph) -> Self {
        Self {
            graph,
            stratifier: Stratifier::new(graph.node_count()),
            cache: HashMap::new(),
        }
    }

    pub fn stratification(&mut self, root: Node) -> Result<&Stratification> {
        if !self.cache.contains_key(&root) {
            let s = self.stratifier.run(self.graph, root)?;
            self.cache.insert(root, s);
        }
        Ok(&self.cache[&root])
    }

    pub fn level(&mut self, root: Node, b: Node) -> Result<Option<usize>> {
        Ok(level_of(self.stratification(root)?, b))
    }

    pub fn compare(&mut self, a1: Node, b1: Node, a2: Node, b2: Node) -> Result<bool> {
        let k1 = self.level(a1, b1)?;
        let k2 = self.level(a2, b2)?;
        Ok(matches!((k1, k2), (Some(k1), Some(k2)) if k1 <= k2))
    }
}

/// The linear order with `height + 1` members interpreted on the levels of
/// one stratification.
///
/// Member `k` is represented by `witnesses[k]`, the least node of `S_k`, and
/// `leq(i, j)` is the level comparison `(root, witnesses[i], root, witnesses[j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelOrder {
    root: Node,
    witnesses: Vec<Node>,
    // Level of each witness as read back through `level_of`.
    ranks: Vec<usize>,
}

pub fn build_level_order(s: &Stratification) -> LevelOrder {
    let witnesses: Vec<Node> = s.levels().iter().map(|level| level[0]).collect();
    let ranks = witnesses
        .iter()
        .map(|&w| level_of(s, w).expect("witness drawn from its own level"))
        .collect();
    LevelOrder {
        root: s.root(),
        witnesses,
        ranks,
    }
}

impl LevelOrder {
    pub fn height(&self) -> usize {
        self.witnesses.len() - 1
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn root(&self) -> Node {
        self.root
    }

    pub fn witnesses(&self) -> &[Node] {
        &self.witnesses
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.ranks[i] <= self.ranks[j]
    }

    /// Verifies that `(carrier, leq)` is isomorphic to `({0..h}, <=)` via
    /// `k ↦ k`, and that every witness lies in its level of `s`.
    pub fn certify(&self, s: &Stratification) -> std::result::Result<(), String> {
        let h = s.height();
        if self.len() != h + 1 {
            return Err(format!("carrier has {} members, expected {}", self.len(), h + 1));
        }
        for (k, &w) in self.witnesses.iter().enumerate() {
            if s.level(k).is_none_or(|level| level.binary_search(&w).is_err()) {
                return Err(format!("witness {w} is not in S_{k}"));
            }
        }
        // The map k -> rank must be a bijection onto 0..=h ...
        let mut hit = vec![false; h + 1];
        for &r in &self.ranks {
            if r > h || std::mem::replace(&mut hit[r], true) {
                return Err(format!("rank {r} out of range or repeated"));
            }
        }
        // ... that is strictly monotone; with leq defined through ranks this
        // makes leq exactly the numeric order.
        if let Some(k) = (1..self.len()).find(|&k| !(self.leq(k - 1, k) && !self.leq(k, k - 1))) {
            return Err(format!("members {} and {k} are out of order", k - 1));
        }
        Ok(())
    }

    /// All pairs `(i, j)` with `leq(i, j)`, sorted.
    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.leq(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    /// Members sorted by `leq`.
    fn sorted_members(&self) -> Vec<usize> {
        let mut members: Vec<usize> = (0..self.len()).collect();
        members.sort_by_key(|&k| self.ranks[k]);
        members
    }
}

impl Serialize for LevelOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LevelOrder", 4)?;
        st.serialize_field("root", &self.root)?;
        st.serialize_field("height", &self.height())?;
        st.serialize_field("witnesses", &self.witnesses)?;
        st.serialize_field("leq", &self.leq_pairs())?;
        st.end()
    }
}

/// `({0..m}, <=, succ, +, ×)` with `+` and `×` as ternary relations that omit
/// results above `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArithSegment {
    bound: usize,
    leq: Vec<(usize, usize)>,
    succ: Vec<(usize, usize)>,
    add: Vec<(usize, usize, usize)>,
    mul: Vec<(usize, usize, usize)>,
}

impl ArithSegment {
    /// Interprets arithmetic on the whole order.
    pub fn interpret(order: &LevelOrder) -> Self {
        Self::interpret_prefix(order, order.height())
    }

    /// Interprets arithmetic on the first `bound + 1` members of the order.
    ///
    /// Members are numbered by their position under `leq`. Successor is
    /// "next member". Addition and multiplication are the least relations
    /// closed under the usual recursion clauses:
    ///
    /// ```text
    /// add(x, 0, x)                 add(x, y, z) ∧ succ(y, y') ∧ succ(z, z') → add(x, y', z')
    /// mul(x, 0, 0)                 mul(x, y, z) ∧ succ(y, y') ∧ add(z, x, w) → mul(x, y', w)
    /// ```
    ///
    /// and are computed stage by stage until no new tuple appears.
    pub fn interpret_prefix(order: &LevelOrder, bound: usize) -> Self {
        assert!(bound <= order.height(), "prefix {bound} exceeds order height {}", order.height());
        let members = order.sorted_members();
        let position: HashMap<usize, usize> = members.iter().take(bound + 1).enumerate().map(|(p, &k)| (k, p)).collect();
        let m = bound;
        let next = |x: usize| -> Option<usize> { (x < m).then(|| position[&members[x + 1]]) };

        let mut leq = Vec::new();
        for i in 0..=m {
            for j in 0..=m {
                if order.leq(members[i], members[j]) {
                    leq.push((i, j));
                }
            }
        }
        let succ: Vec<(usize, usize)> = (0..=m).filter_map(|x| next(x).map(|y| (x, y))).collect();

        // sum[x][y] = Some(z) once add(x, y, z) has been derived.
        let mut sum = vec![vec![None; m + 1]; m + 1];
        for (x, row) in sum.iter_mut().enumerate() {
            row[0] = Some(x);
            let (mut y, mut z) = (0, x);
            while let (Some(y2), Some(z2)) = (next(y), next(z)) {
                row[y2] = Some(z2);
                y = y2;
                z = z2;
            }
        }
        let mut product = vec![vec![None; m + 1]; m + 1];
        for x in 0..=m {
            product[x][0] = Some(0);
            let (mut y, mut z) = (0, 0);
            while let Some(y2) = next(y) {
                match sum[z][x] {
                    Some(w) => {
                        product[x][y2] = Some(w);
                        y = y2;
                        z = w;
                    }
                    None => break,
                }
            }
        }
        let collect = |table: &Vec<Vec<Option<usize>>>| {
            let mut out = Vec::new();
            for (x, row) in table.iter().enumerate() {
                for (y, z) in row.iter().enumerate() {
                    if let Some(z) = z {
                        out.push((x, y, *z));
                    }
                }
            }
            out
        };
        let add = collect(&sum);
        let mul = collect(&product);
        Self { bound, leq, succ, add, mul }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn leq_tuples(&self) -> &[(usize, usize)] {
        &self.leq
    }

    pub fn succ_tuples(&self) -> &[(usize, usize)] {
        &self.succ
    }

    pub fn add_tuples(&self) -> &[(usize, usize, usize)] {
        &self.add
    }

    pub fn mul_tuples(&self) -> &[(usize, usize, usize)] {
        &self.mul
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.binary_search(&(i, j)).is_ok()
    }

    pub fn succ(&self, i: usize, j: usize) -> bool {
        self.succ.binary_search(&(i, j)).is_ok()
    }

    pub fn add(&self, i: usize, j: usize, k: usize) -> bool {
        self.add.binary_search(&(i, j, k)).is_ok()
    }

    pub fn mul(&self, i: usize, j: usize, k: usize) -> bool {
        self.mul.binary_search(&(i, j, k)).is_ok()
    }
}

pub fn arithmetic_segment(s: &Stratification) -> ArithSegment {
    ArithSegment::interpret(&build_level_order(s))
}

/// Which roots a survey or sentence stratifies from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootPolicy {
    All,
    /// `r` distinct roots drawn uniformly; all nodes when `r >= n`.
    Sample(usize),
}

impl Default for RootPolicy {
    fn default() -> Self {
        RootPolicy::Sample(32)
    }
}

impl RootPolicy {
    /// Sorted roots for a structure on `1..=n`.
    pub fn select(&self, n: usize, stream: &RngStream) -> Vec<Node> {
        match *self {
            RootPolicy::Sample(r) if r < n => {
                let mut rng = stream.tagged("roots").rng();
                let mut roots: Vec<Node> = index::sample(&mut rng, n, r).into_iter().map(|i| i + 1).collect();
                roots.sort_unstable();
                roots
            }
            _ => (1..=n).collect(),
        }
    }
}

impl fmt::Display for RootPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootPolicy::All => f.write_str("all"),
            RootPolicy::Sample(r) => write!(f, "sample:{r}"),
        }
    }
}

impl FromStr for RootPolicy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "all" {
            return Ok(RootPolicy::All);
        }
        match s.strip_prefix("sample:").map(str::parse::<usize>) {
            Some(Ok(r)) if r > 0 => Ok(RootPolicy::Sample(r)),
            _ => Err(format!("root policy must be `all` or `sample:<r>` with r >= 1, got `{s}`")),
        }
    }
}

impl Serialize for RootPolicy {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootPolicy {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The fixed menu of properties whose probabilities the harness estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sentence {
    TrueConst,
    R2NonEmpty,
    HeightParityEven,
    HeightAtLeast(usize),
    /// Every level of every stratification from the selected roots has at
    /// most `slack · n^(2 alpha2)` members.
    AllLevelBoundsHold { roots: RootPolicy, slack: f64 },
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::TrueConst => f.write_str("true"),
            Sentence::R2NonEmpty => f.write_str("r2-nonempty"),
            Sentence::HeightParityEven => f.write_str("height-parity-even"),
            Sentence::HeightAtLeast(c) => write!(f, "height-at-least:{c}"),
            Sentence::AllLevelBoundsHold { roots, slack } => {
                write!(f, "all-level-bounds:C={slack}")?;
                if *roots != RootPolicy::default() {
                    write!(f, ",roots={roots}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Sentence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSentence(s.to_string());
        match s {
            "true" => return Ok(Sentence::TrueConst),
            "r2-nonempty" => return Ok(Sentence::R2NonEmpty),
            "height-parity-even" => return Ok(Sentence::HeightParityEven),
            _ => {}
        }
        if let Some(c) = s.strip_prefix("height-at-least:") {
            return c.parse().map(Sentence::HeightAtLeast).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("all-level-bounds:") {
            let mut slack = None;
            let mut roots = RootPolicy::default();
            for part in rest.split(',') {
                if let Some(c) = part.strip_prefix("C=") {
                    slack = Some(c.parse::<f64>().map_err(|_| bad())?);
                } else if let Some(r) = part.strip_prefix("roots=") {
                    roots = r.parse().map_err(|_| bad())?;
                } else {
                    return Err(bad());
                }
            }
            return match slack {
                Some(slack) if slack >= 1.0 => Ok(Sentence::AllLevelBoundsHold { roots, slack }),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

impl Serialize for Sentence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sentence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// What a sentence may need beyond the structure itself.
#[derive(Debug, Clone)]
pub struct EvalContext {
    /// Exponents of the model that produced the structure.
    pub alpha: Option<AlphaPair>,
    /// Roots over which height sentences take their maximum.
    pub height_roots: RootPolicy,
    /// Source of randomness for sampled root sets.
    pub stream: RngStream,
}

impl EvalContext {
    /// Heights over all roots, no model exponents.
    pub fn exact() -> Self {
        Self {
            alpha: None,
            height_roots: RootPolicy::All,
            stream: RngStream::new(0),
        }
    }

    pub fn with_alpha(mut self, alpha: AlphaPair) -> Self {
        self.alpha = Some(alpha);
        self
    }
}

fn height_under(g: &DoubleDigraph, policy: RootPolicy, stream: &RngStream) -> usize {
    match policy {
        RootPolicy::Sample(r) if r < g.node_count() => {
            height_of_sample(g, &policy.select(g.node_count(), stream)).expect("roots drawn in range")
        }
        _ => height_of_graph(g),
    }
}

/// Does `g` satisfy `psi`?
pub fn eval_sentence(g: &DoubleDigraph, psi: &Sentence, ctx: &EvalContext) -> Result<bool> {
    Ok(match *psi {
        Sentence::TrueConst => true,
        Sentence::R2NonEmpty => g.edge_count(Relation::R2) > 0,
        Sentence::HeightParityEven => height_under(g, ctx.height_roots, &ctx.stream).is_multiple_of(2),
        Sentence::HeightAtLeast(c) => height_under(g, ctx.height_roots, &ctx.stream) >= c,
        Sentence::AllLevelBoundsHold { roots, slack } => {
            let alpha = ctx.alpha.ok_or_else(|| {
                Error::ModelMismatch(format!("`{psi}` needs the exponents of a double-alpha model"))
            })?;
            let cap = slack * alpha.level_bound(g.node_count());
            let mut st = Stratifier::new(g.node_count());
            let mut holds = true;
            for root in roots.select(g.node_count(), &ctx.stream) {
                let s = st.run(g, root)?;
                if s.level_sizes().any(|size| size as f64 > cap) {
                    holds = false;
                    break;
                }
            }
            holds
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stratification::stratify;

    fn g_a() -> DoubleDigraph {
        DoubleDigraph::from_pairs(4, [(1, 2)], [(1, 3), (2, 4)]).unwrap()
    }

    fn g_b() -> DoubleDigraph {
        DoubleDigraph::from_pairs(3, [(1, 2), (2, 3)], []).unwrap()
    }

    #[test]
    fn level_of_examples() {
        let sb = stratify(&g_b(), 1).unwrap();
        assert_eq!(level_of(&sb, 3), Some(2));
        assert_eq!(level_of(&sb, 1), Some(0));
        let sa = stratify(&g_a(), 1).unwrap();
        assert_eq!(level_of(&sa, 3), None);
        assert_eq!(level_of(&sa, 4), Some(2));
    }

    #[test]
    fn level_compare_examples() {
        let gb = g_b();
        assert!(level_compare(&gb, 1, 2, 1, 3).unwrap());
        assert!(!level_compare(&gb, 1, 3, 1, 2).unwrap());
        for a in 1..=3 {
            assert!(level_compare(&gb, a, a, a, a).unwrap());
        }
        assert!(!level_compare(&g_a(), 1, 3, 1, 2).unwrap());
        assert!(level_compare(&gb, 9, 1, 1, 1).is_err());
    }

    #[test]
    fn comparator_caches() {
        let g = g_a();
        let mut c = LevelComparator::new(&g);
        assert!(c.compare(1, 2, 2, 4).unwrap()); // level 1 vs level 1
        assert!(c.compare(3, 3, 1, 4).unwrap()); // 0 <= 2
        assert_eq!(c.cache.len(), 3);
    }

    #[test]
    fn level_order_examples() {
        let sb = stratify(&g_b(), 1).unwrap();
        let ob = build_level_order(&sb);
        assert_eq!(ob.witnesses(), &[1, 2, 3]);
        assert_eq!(ob.height(), 2);
        ob.certify(&sb).unwrap();
        assert!(ob.leq(0, 1) && ob.leq(1, 2) && !ob.leq(2, 0));

        let sa = stratify(&g_a(), 1).unwrap();
        let oa = build_level_order(&sa);
        assert_eq!(oa.witnesses(), &[1, 2, 4]);
        oa.certify(&sa).unwrap();

        let s0 = stratify(&g_a(), 3).unwrap();
        let o0 = build_level_order(&s0);
        assert_eq!(o0.len(), 1);
        o0.certify(&s0).unwrap();
        assert_eq!(o0.leq_pairs(), vec![(0, 0)]);
    }

    #[test]
    fn certify_rejects_foreign_stratification() {
        let sb = stratify(&g_b(), 1).unwrap();
        let sa = stratify(&g_a(), 1).unwrap();
        assert!(build_level_order(&sb).certify(&sa).is_err());
        let s0 = stratify(&g_a(), 3).unwrap();
        assert!(build_level_order(&sb).certify(&s0).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let sb = stratify(&g_b(), 1).unwrap();
        let a = arithmetic_segment(&sb);
        assert_eq!(a.bound(), 2);
        assert_eq!(a.succ_tuples(), &[(0, 1), (1, 2)]);
        assert!(a.add(1, 1, 2));
        assert!(a.add_tuples().iter().all(|&(i, j, _)| i + j <= 2));

        let s0 = stratify(&g_a(), 3).unwrap();
        let a0 = arithmetic_segment(&s0);
        assert!(a0.succ_tuples().is_empty());
        assert_eq!(a0.add_tuples(), &[(0, 0, 0)]);
        assert_eq!(a0.mul_tuples(), &[(0, 0, 0)]);

        let chain = DoubleDigraph::from_pairs(5, [(1, 2), (2, 3), (3, 4), (4, 5)], []).unwrap();
        let a4 = arithmetic_segment(&stratify(&chain, 1).unwrap());
        assert_eq!(a4.bound(), 4);
        assert!(a4.mul(2, 2, 4));
        assert!(!a4.mul(2, 3, 6));
    }

    #[test]
    fn sentence_strings_round_trip() {
        let cases = [
            ("true", Sentence::TrueConst),
            ("r2-nonempty", Sentence::R2NonEmpty),
            ("height-parity-even", Sentence::HeightParityEven),
            ("height-at-least:3", Sentence::HeightAtLeast(3)),
            (
                "all-level-bounds:C=4",
                Sentence::AllLevelBoundsHold {
                    roots: RootPolicy::Sample(32),
                    slack: 4.0,
                },
            ),
            (
                "all-level-bounds:C=1.5,roots=all",
                Sentence::AllLevelBoundsHold {
                    roots: RootPolicy::All,
                    slack: 1.5,
                },
            ),
        ];
        for (text, sentence) in cases {
            assert_eq!(text.parse::<Sentence>().unwrap(), sentence);
            assert_eq!(sentence.to_string(), text);
        }
        for bad in ["", "false", "height-at-least:-1", "all-level-bounds:C=0.5", "all-level-bounds:", "all-level-bounds:C=2,x=1"] {
            assert!(bad.parse::<Sentence>().is_err(), "{bad}");
        }
    }

    #[test]
    fn root_policy_strings() {
        assert_eq!("all".parse::<RootPolicy>().unwrap(), RootPolicy::All);
        assert_eq!("sample:7".parse::<RootPolicy>().unwrap(), RootPolicy::Sample(7));
        assert!("sample:0".parse::<RootPolicy>().is_err());
        assert!("some".parse::<RootPolicy>().is_err());
        assert_eq!(RootPolicy::Sample(32).to_string(), "sample:32");
    }

    #[test]
    fn root_selection() {
        let s = RngStream::new(5);
        let roots = RootPolicy::Sample(10).select(100, &s);
        assert_eq!(roots.len(), 10);
        assert!(roots.windows(2).all(|w| w[0] < w[1]));
        assert!(roots.iter().all(|&r| (1..=100).contains(&r)));
        assert_eq!(roots, RootPolicy::Sample(10).select(100, &s));
        assert_eq!(RootPolicy::Sample(10).select(4, &s), vec![1, 2, 3, 4]);
        assert_eq!(RootPolicy::All.select(3, &s), vec![1, 2, 3]);
    }

    #[test]
    fn sentence_examples() {
        let ctx = EvalContext::exact();
        assert!(eval_sentence(&g_b(), &Sentence::HeightParityEven, &ctx).unwrap());
        let single = DoubleDigraph::empty(1).unwrap();
        assert!(eval_sentence(&single, &Sentence::HeightParityEven, &ctx).unwrap());
        assert!(!eval_sentence(&g_b(), &Sentence::HeightAtLeast(3), &ctx).unwrap());
        assert!(eval_sentence(&g_b(), &Sentence::HeightAtLeast(2), &ctx).unwrap());
        assert!(eval_sentence(&g_b(), &Sentence::TrueConst, &ctx).unwrap());
        assert!(!eval_sentence(&g_b(), &Sentence::R2NonEmpty, &ctx).unwrap());
        assert!(eval_sentence(&g_a(), &Sentence::R2NonEmpty, &ctx).unwrap());
    }

    #[test]
    fn level_bound_sentence_needs_alpha() {
        let psi = Sentence::AllLevelBoundsHold {
            roots: RootPolicy::All,
            slack: 1.0,
        };
        assert!(matches!(
            eval_sentence(&g_a(), &psi, &EvalContext::exact()),
            Err(Error::ModelMismatch(_))
        ));
        // n = 4, alpha2 = 0.2: bound 4^0.4 ~ 1.74, so the singleton levels of
        // G_A fit with C = 1 while a level of two would not.
        let ctx = EvalContext::exact().with_alpha(AlphaPair::new(0.1, 0.2).unwrap());
        assert!(eval_sentence(&g_a(), &psi, &ctx).unwrap());
        let wide = DoubleDigraph::from_pairs(4, [], [(1, 2), (1, 3)]).unwrap();
        assert!(!eval_sentence(&wide, &psi, &ctx).unwrap());
    }
}
