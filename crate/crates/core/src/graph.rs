//! Immutable simple undirected graphs over dense vertex ids `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex, so neighbourhood
//! equality (twin detection) and neighbourhood traces `N(v) ∩ D` are
//! word-parallel operations.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GraphError;

/// Default upper bound on the number of vertices accepted by [`Graph::from_edges`].
pub const DEFAULT_MAX_VERTICES: usize = 10_000;

pub type Vertex = usize;

/// A set of vertex ids.
///
/// Equality, hashing and ordering depend only on the members, never on the
/// capacity of the underlying bitset.
#[derive(Clone, Default)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self { bits: FixedBitSet::with_capacity(n) }
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        if v >= self.bits.len() {
            self.bits.grow(v + 1);
        }
        !self.bits.put(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        if v < self.bits.len() && self.bits[v] {
            self.bits.set(v, false);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.bits.minimum()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.bits.maximum()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    /// Block words with trailing zero words removed; a canonical key.
    fn key(&self) -> &[fixedbitset::Block] {
        let s = self.bits.as_slice();
        let end = s.iter().rposition(|&w| w != 0).map_or(0, |i| i + 1);
        &s[..end]
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for VertexSet {}

impl std::hash::Hash for VertexSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order of the sorted member lists.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Extend<Vertex> for VertexSet {
    fn extend<I: IntoIterator<Item = Vertex>>(&mut self, iter: I) {
        for v in iter {
            self.insert(v);
        }
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(vs: [Vertex; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<Vertex>::deserialize(deserializer)?;
        Ok(v.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinKind {
    /// `N(u) = N(v)`, `u` and `v` non-adjacent.
    Open,
    /// `N[u] = N[v]`, `u` and `v` adjacent.
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwinPair {
    pub u: Vertex,
    pub v: Vertex,
    pub kind: TwinKind,
}

/// Translation between the ids of a graph and one of its induced subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    to_old: Vec<Vertex>,
    to_new: Vec<Option<Vertex>>,
}

impl VertexMap {
    pub fn to_old(&self, new: Vertex) -> Vertex {
        self.to_old[new]
    }

    pub fn to_new(&self, old: Vertex) -> Option<Vertex> {
        self.to_new.get(old).copied().flatten()
    }

    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.to_old[v]).collect()
    }

    /// Restrict an old-id set to the kept vertices, in new ids.
    pub fn restrict(&self, set: &VertexSet) -> VertexSet {
        set.iter().filter_map(|v| self.to_new(v)).collect()
    }

    pub fn old_ids(&self) -> &[Vertex] {
        &self.to_old
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// Builds a graph with exactly the given edges, rejecting self-loops,
    /// repeated edges (in either orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::from_edges_with_cap(n, edges, DEFAULT_MAX_VERTICES)
    }

    pub fn from_edges_with_cap<I>(n: usize, edges: I, cap: usize) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n > cap {
            return Err(GraphError::TooLarge { n, cap });
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v: u });
            }
            if g.adj[u][v] {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
            g.m += 1;
        }
        Ok(g)
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { n, m: 0, adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub(crate) fn from_rows(adj: Vec<FixedBitSet>) -> Self {
        let n = adj.len();
        let m = adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2;
        Graph { n, m, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.vertices().map(|v| self.degree(v)).collect()
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].ones()
    }

    /// `N(v)`.
    pub fn open_neighborhood(&self, v: Vertex) -> VertexSet {
        VertexSet { bits: self.adj[v].clone() }
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: Vertex) -> VertexSet {
        let mut bits = self.adj[v].clone();
        bits.insert(v);
        VertexSet { bits }
    }

    pub(crate) fn row(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            out.extend(self.adj[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        self.vertices().filter(|&v| self.adj[v].is_clear()).collect()
    }

    pub fn is_isolate_free(&self) -> bool {
        self.vertices().all(|v| !self.adj[v].is_clear())
    }

    /// The lexicographically smallest twin pair `(u, v)`, `u < v`, if any.
    pub fn find_twin_pair(&self) -> Option<TwinPair> {
        let mut open: HashMap<&FixedBitSet, Vertex> = HashMap::new();
        let mut closed_rows: Vec<FixedBitSet> = Vec::with_capacity(self.n);
        for v in self.vertices() {
            let mut r = self.adj[v].clone();
            r.insert(v);
            closed_rows.push(r);
        }
        let mut closed: HashMap<&FixedBitSet, Vertex> = HashMap::new();
        let mut best: Option<TwinPair> = None;
        let mut consider = |p: TwinPair| {
            if best.is_none_or(|b| (p.u, p.v) < (b.u, b.v)) {
                best = Some(p);
            }
        };
        // Scanning in increasing v, the first hit for a given v pairs it with
        // the smallest earlier vertex of its class.
        for v in self.vertices() {
            match open.get(&self.adj[v]) {
                Some(&u) => consider(TwinPair { u, v, kind: TwinKind::Open }),
                None => {
                    open.insert(&self.adj[v], v);
                }
            }
            match closed.get(&closed_rows[v]) {
                Some(&u) => consider(TwinPair { u, v, kind: TwinKind::Closed }),
                None => {
                    closed.insert(&closed_rows[v], v);
                }
            }
        }
        best
    }

    pub fn is_twin_free(&self) -> bool {
        self.find_twin_pair().is_none()
    }

    /// Smallest vertex `x ≠ v` that is a twin of `v`.
    pub fn find_twin_of(&self, v: Vertex) -> Option<TwinPair> {
        let mut closed_v = self.adj[v].clone();
        closed_v.insert(v);
        self.vertices().filter(|&x| x != v).find_map(|x| {
            if self.adj[x] == self.adj[v] {
                Some(TwinPair { u: v.min(x), v: v.max(x), kind: TwinKind::Open })
            } else if self.adj[x].contains(v) {
                let mut closed_x = self.adj[x].clone();
                closed_x.insert(x);
                (closed_x == closed_v)
                    .then(|| TwinPair { u: v.min(x), v: v.max(x), kind: TwinKind::Closed })
            } else {
                None
            }
        })
    }

    /// The subgraph induced by `keep`, relabelled to `0..|keep|` in increasing
    /// order of the original ids.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, VertexMap) {
        let to_old: Vec<Vertex> = keep.iter().filter(|&v| v < self.n).collect();
        let mut to_new = vec![None; self.n];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = Some(i);
        }
        let k = to_old.len();
        let mut adj = vec![FixedBitSet::with_capacity(k); k];
        for (i, &v) in to_old.iter().enumerate() {
            for w in self.adj[v].ones() {
                if let Some(j) = to_new[w] {
                    adj[i].insert(j);
                }
            }
        }
        (Graph::from_rows(adj), VertexMap { to_old, to_new })
    }

    /// `G - remove`, see [`Graph::induced_subgraph`].
    pub fn without(&self, remove: &[Vertex]) -> (Graph, VertexMap) {
        let mut keep = VertexSet::full(self.n);
        for &v in remove {
            keep.remove(v);
        }
        self.induced_subgraph(&keep)
    }

    /// Same vertex set with the given edges removed; every pair must be an edge.
    pub fn delete_edges(&self, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut adj = self.adj.clone();
        for &(u, v) in edges {
            if u >= self.n || v >= self.n || !adj[u].contains(v) {
                return Err(GraphError::NotAnEdge { u, v });
            }
            adj[u].set(v, false);
            adj[v].set(u, false);
        }
        Ok(Graph::from_rows(adj))
    }

    pub fn complement(&self) -> Graph {
        let mut adj = Vec::with_capacity(self.n);
        for v in self.vertices() {
            let mut r = self.adj[v].clone();
            r.toggle_range(..);
            r.set(v, false);
            adj.push(r);
        }
        Graph::from_rows(adj)
    }

    /// Connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            let mut comp = VertexSet::with_capacity(self.n);
            let mut queue = VecDeque::from([s]);
            seen.insert(s);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for w in self.adj[v].ones() {
                    if !seen.put(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Breadth-first distances from `s`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, s: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for w in self.adj[v].ones() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Relabel vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut adj = vec![FixedBitSet::with_capacity(self.n); self.n];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Graph::from_rows(adj)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
