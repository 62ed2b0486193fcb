//! Immutable signed graphs, switching, balance and metric queries.

mod classes;
mod generators;
mod io;
mod walk;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use classes::DEFAULT_SCAN_EDGE_LIMIT;
pub use generators::SignPattern;
pub use walk::Walk;

/// Edge sign `σ_xy ∈ {−1, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_int(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(Error::InvalidSign(other.to_string())),
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    #[inline]
    pub fn as_int(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }
}

impl Mul for Sign {
    type Output = Sign;
    #[inline]
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Negative
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+1",
            Sign::Negative => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_int())
    }
}

/// An undirected edge; `u`, `v` keep the orientation in which the edge was inserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

/// A vertex map `τ: V → {±1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SwitchingFunction {
    tau: Vec<Sign>,
}

impl SwitchingFunction {
    pub fn new(tau: Vec<Sign>) -> Self {
        Self { tau }
    }

    pub fn identity(n: usize) -> Self {
        Self { tau: vec![Sign::Positive; n] }
    }

    /// Bit `i` of `mask` set means `τ(i) = −1`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let tau = (0..n)
            .map(|i| if mask >> i & 1 == 1 { Sign::Negative } else { Sign::Positive })
            .collect();
        Self { tau }
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize) -> Sign {
        self.tau[x]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.tau
    }

    /// Pointwise product `(τf)(x) = τ(x) f(x)`.
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        f.iter().zip(&self.tau).map(|(v, s)| s.value() * v).collect()
    }

    pub fn compose(&self, other: &SwitchingFunction) -> SwitchingFunction {
        let tau = self.tau.iter().zip(&other.tau).map(|(&a, &b)| a * b).collect();
        SwitchingFunction { tau }
    }

    pub fn negated(&self) -> SwitchingFunction {
        SwitchingFunction { tau: self.tau.iter().map(|&s| -s).collect() }
    }
}

/// Outcome of a balance test.
#[derive(Debug, Clone, PartialEq)]
pub enum Balance {
    /// `σ^τ ≡ +1` for the returned switching function.
    Balanced(SwitchingFunction),
    /// A cycle `x_0, …, x_k` (closed by the edge `x_k x_0`) with sign `−1`.
    Unbalanced { cycle: Vec<usize> },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced(_))
    }

    pub fn certificate(&self) -> Option<&SwitchingFunction> {
        match self {
            Balance::Balanced(tau) => Some(tau),
            Balance::Unbalanced { .. } => None,
        }
    }
}

/// A finite, simple, connected graph with `±1` edge signs.
///
/// Vertices are dense indices `0..n`; labels are kept for I/O. Neighbor lists
/// are sorted by index, and the edge list keeps insertion order so that the
/// text serialization is stable.
#[derive(Debug, Clone)]
pub struct SignedGraph {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    adj: Vec<Vec<(usize, Sign)>>,
    edges: Vec<Edge>,
}

impl PartialEq for SignedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl SignedGraph {
    /// Builds a graph from labelled edges; vertices are indexed by first appearance.
    pub fn from_edge_list<S: AsRef<str>>(edges: &[(S, S, i64)]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut indexed = Vec::with_capacity(edges.len());
        for (a, b, s) in edges {
            let sign = Sign::from_int(*s)?;
            let mut id = |l: &str| -> usize {
                if let Some(&i) = index.get(l) {
                    return i;
                }
                labels.push(l.to_string());
                index.insert(l.to_string(), labels.len() - 1);
                labels.len() - 1
            };
            let u = id(a.as_ref());
            let v = id(b.as_ref());
            indexed.push((u, v, sign));
        }
        Self::from_indexed(labels, indexed)
    }

    /// Builds a graph on vertices `0..labels.len()`.
    pub fn from_indexed(labels: Vec<String>, edges: Vec<(usize, usize, Sign)>) -> Result<Self> {
        let n = labels.len();
        if edges.is_empty() {
            return Err(Error::Empty);
        }
        let mut adj: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); n];
        let mut stored = Vec::with_capacity(edges.len());
        for (u, v, sign) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::SelfLoop(labels[u].clone()));
            }
            if adj[u].iter().any(|&(w, _)| w == v) {
                return Err(Error::DuplicateEdge(labels[u].clone(), labels[v].clone()));
            }
            adj[u].push((v, sign));
            adj[v].push((u, sign));
            stored.push(Edge { u, v, sign });
        }
        for list in &mut adj {
            list.sort_by_key(|&(w, _)| w);
        }
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect::<HashMap<_, _>>();
        if label_index.len() != n {
            return Err(Error::InvalidParameter("vertex labels must be distinct".into()));
        }
        let g = SignedGraph { labels, label_index, adj, edges: stored };
        let dist = g.distances_from(0);
        if let Some(x) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(Error::Disconnected(g.labels[x].clone(), g.labels[0].clone()));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, x: usize) -> &[(usize, Sign)] {
        &self.adj[x]
    }

    #[inline]
    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `vol(G) = Σ_x d_x`.
    pub fn volume(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn sign(&self, x: usize, y: usize) -> Option<Sign> {
        self.adj[x]
            .binary_search_by_key(&y, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[x][i].1)
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.sign(x, y).is_some()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.label_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn negative_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_negative()).count()
    }

    /// Edge signs in edge-list order.
    pub fn edge_signs(&self) -> Vec<Sign> {
        self.edges.iter().map(|e| e.sign).collect()
    }

    /// Same underlying graph with the given signs (in edge-list order).
    pub fn with_edge_signs(&self, signs: &[Sign]) -> Result<SignedGraph> {
        if signs.len() != self.edges.len() {
            return Err(Error::LengthMismatch { expected: self.edges.len(), got: signs.len() });
        }
        let mut g = self.clone();
        for (e, &s) in g.edges.iter_mut().zip(signs) {
            e.sign = s;
        }
        g.rebuild_adjacency();
        Ok(g)
    }

    pub fn with_all_positive(&self) -> SignedGraph {
        self.with_uniform_sign(Sign::Positive)
    }

    pub fn with_all_negative(&self) -> SignedGraph {
        self.with_uniform_sign(Sign::Negative)
    }

    fn with_uniform_sign(&self, sign: Sign) -> SignedGraph {
        let signs = vec![sign; self.edges.len()];
        self.with_edge_signs(&signs).expect("length matches")
    }

    fn rebuild_adjacency(&mut self) {
        for list in &mut self.adj {
            list.clear();
        }
        for e in &self.edges {
            self.adj[e.u].push((e.v, e.sign));
            self.adj[e.v].push((e.u, e.sign));
        }
        for list in &mut self.adj {
            list.sort_by_key(|&(w, _)| w);
        }
    }

    /// Switching `σ^τ_xy = τ(x) σ_xy τ(y)`.
    pub fn switch(&self, tau: &SwitchingFunction) -> Result<SignedGraph> {
        if tau.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: tau.len() });
        }
        let signs: Vec<Sign> = self.edges.iter().map(|e| tau.get(e.u) * e.sign * tau.get(e.v)).collect();
        self.with_edge_signs(&signs)
    }

    /// Breadth-first sign propagation from vertex 0.
    pub fn balance(&self) -> Balance {
        let n = self.n();
        let mut tau: Vec<Option<Sign>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        tau[0] = Some(Sign::Positive);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let tx = tau[x].expect("visited");
            for &(y, s) in &self.adj[x] {
                if tau[y].is_none() {
                    tau[y] = Some(tx * s);
                    parent[y] = x;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let tau: Vec<Sign> = tau.into_iter().map(|t| t.expect("graph is connected")).collect();
        for e in &self.edges {
            if tau[e.u] * e.sign * tau[e.v] == Sign::Negative {
                return Balance::Unbalanced { cycle: tree_cycle(&parent, &depth, e.u, e.v) };
            }
        }
        Balance::Balanced(SwitchingFunction::new(tau))
    }

    pub fn is_balanced(&self) -> bool {
        self.balance().is_balanced()
    }

    /// Product of edge signs along a closed vertex sequence.
    pub fn cycle_sign(&self, cycle: &[usize]) -> Result<Sign> {
        let mut s = Sign::Positive;
        for (i, &x) in cycle.iter().enumerate() {
            let y = cycle[(i + 1) % cycle.len()];
            s = s * self.sign(x, y).ok_or(Error::NotAdjacent(x, y))?;
        }
        Ok(s)
    }

    /// BFS distances on the unsigned graph; unreachable entries are `usize::MAX`.
    pub fn distances_from(&self, x: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distance(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|x| self.distances_from(x)).collect()
    }

    pub fn diameter(&self) -> usize {
        (0..self.n())
            .map(|x| self.distances_from(x).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Vertices at distance exactly `r` from `x`, ascending.
    pub fn sphere(&self, x: usize, r: usize) -> Vec<usize> {
        self.distances_from(x)
            .into_iter()
            .enumerate()
            .filter_map(|(v, d)| (d == r).then_some(v))
            .collect()
    }

    /// Vertices at distance at most `r` from `x`, ascending.
    pub fn ball(&self, x: usize, r: usize) -> Vec<usize> {
        self.distances_from(x)
            .into_iter()
            .enumerate()
            .filter_map(|(v, d)| (d <= r).then_some(v))
            .collect()
    }

    pub fn is_bipartite(&self) -> bool {
        self.with_all_negative().is_balanced()
    }

    pub fn has_triangle(&self) -> bool {
        self.edges.iter().any(|e| {
            self.adj[e.u]
                .iter()
                .any(|&(w, _)| w != e.v && self.is_adjacent(w, e.v))
        })
    }
}

/// Cycle through the BFS tree closed by the non-tree edge `{x, y}`.
fn tree_cycle(parent: &[usize], depth: &[usize], x: usize, y: usize) -> Vec<usize> {
    let (mut a, mut b) = (x, y);
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up_a.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        up_b.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up_a.push(a);
        up_b.push(b);
    }
    // up_a ends at the common ancestor; append y's branch in reverse without repeating it.
    up_b.pop();
    up_a.extend(up_b.into_iter().rev());
    up_a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_signed() -> SignedGraph {
        SignedGraph::from_edge_list(&[("1", "2", 1), ("2", "3", 1), ("1", "3", -1)]).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = SignedGraph::from_edge_list(&[("a", "b", 1)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.volume(), 2);
        assert_eq!(g.max_degree(), 1);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            SignedGraph::from_edge_list(&[("a", "a", 1)]).unwrap_err(),
            Error::SelfLoop("a".into())
        );
        assert!(matches!(
            SignedGraph::from_edge_list(&[("a", "b", 1), ("b", "a", -1)]),
            Err(Error::DuplicateEdge(..))
        ));
        assert!(matches!(SignedGraph::from_edge_list(&[("a", "b", 2)]), Err(Error::InvalidSign(_))));
        assert!(matches!(
            SignedGraph::from_edge_list(&[("a", "b", 1), ("c", "d", 1)]),
            Err(Error::Disconnected(..))
        ));
        let none: [(&str, &str, i64); 0] = [];
        assert_eq!(SignedGraph::from_edge_list(&none).unwrap_err(), Error::Empty);
    }

    #[test]
    fn switching_moves_negative_edge() {
        let g = triangle_signed();
        let tau = SwitchingFunction::new(vec![Sign::Positive, Sign::Positive, Sign::Negative]);
        let h = g.switch(&tau).unwrap();
        assert_eq!(h.sign(0, 2), Some(Sign::Positive));
        assert_eq!(h.sign(1, 2), Some(Sign::Negative));
        assert_eq!(h.sign(0, 1), Some(Sign::Positive));
    }

    #[test]
    fn global_negation_keeps_signs() {
        let g = triangle_signed();
        let tau = SwitchingFunction::identity(3).negated();
        assert_eq!(g.switch(&tau).unwrap(), g);
    }

    #[test]
    fn unbalanced_triangle_witness() {
        let g = triangle_signed();
        match g.balance() {
            Balance::Unbalanced { cycle } => {
                assert_eq!(cycle.len(), 3);
                assert_eq!(g.cycle_sign(&cycle).unwrap(), Sign::Negative);
            }
            Balance::Balanced(_) => panic!("signed triangle is unbalanced"),
        }
    }

    #[test]
    fn balanced_certificate_clears_negative_edges() {
        let g = SignedGraph::from_edge_list(&[("a", "b", -1), ("b", "c", -1), ("c", "a", 1)]).unwrap();
        let tau = g.balance().certificate().cloned().expect("balanced");
        assert_eq!(g.switch(&tau).unwrap().negative_edge_count(), 0);
    }

    #[test]
    fn bipartite_and_triangles() {
        let g = triangle_signed();
        assert!(!g.is_bipartite());
        assert!(g.has_triangle());
        let sq = SignedGraph::from_edge_list(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)]).unwrap();
        assert!(sq.is_bipartite());
        assert!(!sq.has_triangle());
    }

    #[test]
    fn spheres_and_balls() {
        let g = SignedGraph::from_edge_list(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1)]).unwrap();
        assert_eq!(g.sphere(0, 2), vec![2]);
        assert_eq!(g.ball(0, 1), vec![0, 1]);
        assert_eq!(g.diameter(), 3);
    }
}
