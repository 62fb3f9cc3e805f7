//! Maximal outerplanar graphs (mops): recognition by ear stripping, the dual
//! tree of the triangulation, and an inductive LD-partition construction that
//! removes two vertices near a deepest leaf of the dual tree.

use std::collections::{BTreeMap, HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::check::check_ld_partition;
use crate::error::{InternalAssertionFailure, LdError};
use crate::graph::{Graph, Vertex, VertexMap, VertexSet};
use crate::partition::{LdPartition, Side};
use crate::GraphClass;

const ALGORITHM: &str = "mop";

pub type Triangle = [Vertex; 3];

/// A mop together with its unique Hamiltonian outer cycle and its triangles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MopStructure {
    /// Starts at vertex 0 and continues towards its smaller cycle neighbour.
    pub outer_cycle: Vec<Vertex>,
    /// Edges not on the outer cycle, each as `(u, v)` with `u < v`, sorted.
    pub chords: Vec<(Vertex, Vertex)>,
    /// Sorted triples, sorted lexicographically.
    pub triangles: Vec<Triangle>,
}

impl MopStructure {
    pub fn n(&self) -> usize {
        self.outer_cycle.len()
    }

    /// The graph spanned by the outer cycle and the chords.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let cycle = (0..n).map(|i| (self.outer_cycle[i], self.outer_cycle[(i + 1) % n]));
        Graph::from_edges(n, cycle.chain(self.chords.iter().copied())).expect("structure describes a simple graph")
    }

    /// Cycle neighbours of `v`, as (previous, next) in cycle order.
    pub fn cycle_neighbors(&self, v: Vertex) -> (Vertex, Vertex) {
        let n = self.n();
        let i = self.outer_cycle.iter().position(|&w| w == v).expect("vertex on the cycle");
        (self.outer_cycle[(i + n - 1) % n], self.outer_cycle[(i + 1) % n])
    }
}

fn not_mop(reason: impl Into<String>) -> LdError {
    LdError::NotInClass { class: GraphClass::Mop, reason: reason.into() }
}

/// Recognises a mop of order at least 3.
///
/// Strips ears (degree-2 vertices with adjacent neighbours) until a triangle
/// remains, then re-inserts them in reverse; each ear must land on an edge of
/// the current outer cycle.
pub fn recognize_mop(g: &Graph) -> Result<MopStructure, LdError> {
    let n = g.n();
    if n < 3 {
        return Err(LdError::TooSmall { n, min: 3 });
    }
    if g.m() != 2 * n - 3 {
        return Err(not_mop(format!("{} edges, a mop on {n} vertices has {}", g.m(), 2 * n - 3)));
    }
    if !g.is_connected() {
        return Err(not_mop("graph is not connected"));
    }
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut deg = g.degrees();
    let mut ears: Vec<(Vertex, Vertex, Vertex)> = Vec::with_capacity(n - 3);
    let mut queue: VecDeque<Vertex> = (0..n).filter(|&v| deg[v] == 2).collect();
    let mut left = n;
    while left > 3 {
        let Some(v) = queue.pop_front() else {
            let rest: Vec<Vertex> = alive.ones().collect();
            return Err(not_mop(format!("ear reduction stuck with vertices {rest:?} left")));
        };
        if !alive.contains(v) || deg[v] != 2 {
            continue;
        }
        let mut nb = g.row(v).clone();
        nb.intersect_with(&alive);
        let mut it = nb.ones();
        let (a, b) = (it.next().expect("degree 2"), it.next().expect("degree 2"));
        if !g.has_edge(a, b) {
            continue;
        }
        alive.set(v, false);
        left -= 1;
        ears.push((v, a, b));
        for w in [a, b] {
            deg[w] -= 1;
            if deg[w] == 2 {
                queue.push_back(w);
            }
        }
    }
    let base: Vec<Vertex> = alive.ones().collect();
    let (a, b, c) = (base[0], base[1], base[2]);
    if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
        return Err(not_mop(format!("ear reduction ends in {base:?}, which is not a triangle")));
    }
    let mut next = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    for (u, w) in [(a, b), (b, c), (c, a)] {
        next[u] = w;
        prev[w] = u;
    }
    let mut triangles: Vec<Triangle> = vec![[a, b, c]];
    for &(v, x, y) in ears.iter().rev() {
        let (u, w) = if next[x] == y {
            (x, y)
        } else if next[y] == x {
            (y, x)
        } else {
            return Err(not_mop(format!("vertex {v} sits on the inner edge {x}-{y}")));
        };
        next[u] = v;
        prev[v] = u;
        next[v] = w;
        prev[w] = v;
        let mut t = [v, x, y];
        t.sort_unstable();
        triangles.push(t);
    }
    triangles.sort_unstable();
    let towards = if next[0] < prev[0] { &next } else { &prev };
    let mut outer_cycle = Vec::with_capacity(n);
    let mut v = 0;
    for _ in 0..n {
        outer_cycle.push(v);
        v = towards[v];
    }
    let chords = g
        .edges()
        .into_iter()
        .filter(|&(u, w)| next[u] != w && next[w] != u)
        .collect();
    Ok(MopStructure { outer_cycle, chords, triangles })
}

/// Tree on the triangles of a mop; two triangles are adjacent when they share
/// an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualTree {
    pub triangles: Vec<Triangle>,
    pub adjacency: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
}

pub fn build_dual_tree(s: &MopStructure) -> DualTree {
    let mut by_edge: HashMap<(Vertex, Vertex), Vec<usize>> = HashMap::new();
    for (i, &[a, b, c]) in s.triangles.iter().enumerate() {
        for e in [(a, b), (a, c), (b, c)] {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut adjacency = vec![Vec::new(); s.triangles.len()];
    for ts in by_edge.values() {
        debug_assert!(ts.len() <= 2, "an edge of a mop lies on at most two triangles");
        if let [i, j] = ts[..] {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
    }
    for a in &mut adjacency {
        a.sort_unstable();
    }
    DualTree { triangles: s.triangles.clone(), adjacency, root: None }
}

/// BFS data of a dual tree hung from a root.
#[derive(Debug, Clone)]
pub struct RootedDual {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
}

impl RootedDual {
    pub fn children<'a>(&'a self, tree: &'a DualTree, t: usize) -> impl Iterator<Item = usize> + 'a {
        tree.adjacency[t].iter().copied().filter(move |&c| self.parent[c] == Some(t))
    }
}

impl DualTree {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn degree(&self, t: usize) -> usize {
        self.adjacency[t].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nb) in self.adjacency.iter().enumerate() {
            out.extend(nb.iter().filter(|&&j| i < j).map(|&j| (i, j)));
        }
        out
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.degree(t) <= 1).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|t| self.degree(t)).max().unwrap_or(0)
    }

    pub fn is_tree(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let r = self.rooted(0);
        self.edges().len() == self.len() - 1 && r.depth.iter().all(|&d| d != usize::MAX)
    }

    pub fn with_root(mut self, root: usize) -> Self {
        self.root = Some(root);
        self
    }

    /// Parents and depths by BFS from `root`; unreachable nodes get depth `usize::MAX`.
    pub fn rooted(&self, root: usize) -> RootedDual {
        let k = self.len();
        let mut parent = vec![None; k];
        let mut depth = vec![usize::MAX; k];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(t) = queue.pop_front() {
            for &c in &self.adjacency[t] {
                if depth[c] == usize::MAX {
                    depth[c] = depth[t] + 1;
                    parent[c] = Some(t);
                    queue.push_back(c);
                }
            }
        }
        RootedDual { root, parent, depth }
    }
}

fn shared(a: &Triangle, b: &Triangle) -> Vec<Vertex> {
    a.iter().copied().filter(|v| b.contains(v)).collect()
}

fn apex(t: &Triangle, edge: &[Vertex]) -> Vertex {
    t.iter().copied().find(|v| !edge.contains(v)).expect("triangle has a third vertex")
}

/// Which configuration of the dual tree drove a reduction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Config {
    /// The parent `x` of the chosen leaf `y` has a second leaf child.
    TwoLeaves,
    /// `x` has `y` as its only child.
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Step {
    config: Config,
    /// `v1..v5` in the current graph's labels.
    v: [Vertex; 5],
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MopTrace {
    pub base_order: usize,
    pub cases: BTreeMap<String, usize>,
}

fn assertion(step: &str, message: String, g: &Graph) -> LdError {
    InternalAssertionFailure::new(ALGORITHM, step, message, g).into()
}

/// LD-partition of a mop of order at least 4.
pub fn ld_partition_mop(g: &Graph) -> Result<LdPartition, LdError> {
    ld_partition_mop_traced(g).map(|(p, _)| p)
}

pub fn ld_partition_mop_traced(g: &Graph) -> Result<(LdPartition, MopTrace), LdError> {
    if g.n() < 4 {
        return Err(LdError::TooSmall { n: g.n(), min: 4 });
    }
    let mut trace = MopTrace::default();
    // reduce to order 4 or 5, remembering each step and the relabelling
    let mut levels: Vec<(Graph, Step, VertexMap)> = Vec::new();
    let mut cur = g.clone();
    let mut s = recognize_mop(&cur)?;
    while cur.n() >= 6 {
        let step = choose_step(&cur, &s)?;
        let [_, _, _, v4, v5] = step.v;
        let (h, map) = cur.without(&[v4, v5]);
        let hs = recognize_mop(&h).map_err(|e| assertion("reduction", format!("G-{{{v4},{v5}}} is not a mop: {e}"), &cur))?;
        levels.push((std::mem::replace(&mut cur, h), step, map));
        s = hs;
    }
    trace.base_order = cur.n();
    let mut p = base_case(&cur, &s)?;
    verify(&cur, &p, "base case")?;
    while let Some((parent, step, map)) = levels.pop() {
        let lifted = p.lift(&map);
        let (ext, case) = extend(&parent, lifted, step)?;
        verify(&parent, &ext, case)?;
        *trace.cases.entry(case.to_string()).or_default() += 1;
        p = ext;
    }
    Ok((p, trace))
}

fn verify(g: &Graph, p: &LdPartition, case: &str) -> Result<(), LdError> {
    let report = check_ld_partition(g, p)?;
    if report.passed() {
        Ok(())
    } else {
        Err(assertion(case, format!("{p:?} fails the check: {report:?}"), g))
    }
}

/// Orders 4 and 5: a universal vertex `v1` followed by the rest of the outer
/// cycle, walked towards the smaller cycle neighbour of `v1`.
fn base_case(g: &Graph, s: &MopStructure) -> Result<LdPartition, LdError> {
    let n = g.n();
    let Some(v1) = g.vertices().find(|&v| g.degree(v) == n - 1) else {
        return Err(assertion("base case", format!("mop of order {n} has no universal vertex"), g));
    };
    let i = s.outer_cycle.iter().position(|&v| v == v1).expect("on the cycle");
    let (before, after) = s.cycle_neighbors(v1);
    let walk: Vec<Vertex> = if after < before {
        (0..n).map(|k| s.outer_cycle[(i + k) % n]).collect()
    } else {
        (0..n).map(|k| s.outer_cycle[(i + n - k) % n]).collect()
    };
    Ok(match n {
        4 => LdPartition::new(VertexSet::from([walk[0], walk[1]]), VertexSet::from([walk[2], walk[3]])),
        5 => LdPartition::new(VertexSet::from([walk[0], walk[1], walk[4]]), VertexSet::from([walk[2], walk[3]])),
        _ => unreachable!("base case is reached at order 4 or 5"),
    })
}

/// Roots the dual tree at the leaf with the smallest triangle, takes a deepest
/// other leaf `y` (smallest triangle on ties) and reads `v1..v5` off the
/// triangles around `y`.
fn choose_step(g: &Graph, s: &MopStructure) -> Result<Step, LdError> {
    let tree = build_dual_tree(s);
    let leaves = tree.leaves();
    let w = leaves[0];
    let r = tree.rooted(w);
    let y = leaves
        .iter()
        .copied()
        .filter(|&t| t != w)
        .min_by_key(|&t| (std::cmp::Reverse(r.depth[t]), tree.triangles[t]))
        .expect("a tree on at least two nodes has two leaves");
    let x = r.parent[y].expect("y is not the root");
    let tri = &tree.triangles;
    let children: Vec<usize> = r.children(&tree, x).collect();
    let step = match children[..] {
        [_, _] => {
            let z = children.iter().copied().find(|&c| c != y).expect("two children");
            if tree.degree(z) != 1 {
                return Err(assertion("configuration", format!("sibling triangle {:?} of a deepest leaf is not a leaf", tri[z]), g));
            }
            let ey = shared(&tri[x], &tri[y]);
            let ez = shared(&tri[x], &tri[z]);
            let v3 = ey.iter().copied().find(|v| ez.contains(v)).expect("the two ears of x meet");
            let v1 = ey.iter().copied().find(|&v| v != v3).expect("edge has two ends");
            let v2 = ez.iter().copied().find(|&v| v != v3).expect("edge has two ends");
            let v = [v1, v2, v3, apex(&tri[y], &ey), apex(&tri[z], &ez)];
            let [_, _, v3, v4, v5] = v;
            if g.degree(v4) != 2 || g.degree(v5) != 2 || g.degree(v3) != 4 {
                return Err(assertion("configuration A", format!("unexpected degrees around {v:?}"), g));
            }
            Step { config: Config::TwoLeaves, v }
        }
        [_] => {
            let xp = r.parent[x].ok_or_else(|| assertion("configuration B", "x has no parent".into(), g))?;
            let e = shared(&tri[x], &tri[xp]);
            let v3 = apex(&tri[xp], &e);
            let v4 = apex(&tri[x], &e);
            let ey = shared(&tri[x], &tri[y]);
            let v2 = ey.iter().copied().find(|&v| v != v4).expect("edge has two ends");
            let v1 = e.iter().copied().find(|&v| v != v2).expect("edge has two ends");
            let v5 = apex(&tri[y], &ey);
            let v = [v1, v2, v3, v4, v5];
            if g.degree(v5) != 2 || g.degree(v4) != 3 {
                return Err(assertion("configuration B", format!("unexpected degrees around {v:?}"), g));
            }
            Step { config: Config::Chain, v }
        }
        _ => return Err(assertion("configuration", format!("parent of a leaf has {} children", children.len()), g)),
    };
    Ok(step)
}

/// Extends a partition of `G - {v4, v5}` (already in `g`'s labels) to `g`.
fn extend(g: &Graph, p: LdPartition, step: Step) -> Result<(LdPartition, &'static str), LdError> {
    let [v1, v2, v3, v4, v5] = step.v;
    let sides = [v1, v2, v3].map(|v| p.side_of(v).expect("lifted partition covers v1, v2, v3"));
    let firsts = sides.iter().filter(|&&s| s == Side::First).count();
    // the side holding at least two of v1, v2, v3 becomes D1
    let mut p = if firsts >= 2 { p } else { p.swapped() };
    let lone = [v1, v2, v3].into_iter().find(|&v| p.side_of(v) == Some(Side::Second));
    let case = match (step.config, lone) {
        (Config::TwoLeaves, None) => {
            return Err(assertion("configuration A", format!("{v1}, {v2}, {v3} share a side, so {v3} is undominated in G-{{{v4},{v5}}}"), g));
        }
        (Config::TwoLeaves, Some(v)) if v == v3 => {
            p.d2.remove(v3);
            p.add(Side::First, v3);
            p.add(Side::Second, v4);
            p.add(Side::Second, v5);
            "A1"
        }
        (Config::TwoLeaves, Some(v)) if v == v2 => {
            p.add(Side::First, v5);
            p.add(Side::Second, v4);
            "A2"
        }
        (Config::TwoLeaves, Some(_)) => {
            p.add(Side::First, v4);
            p.add(Side::Second, v5);
            "A3"
        }
        (Config::Chain, Some(v)) if v == v3 => {
            p.add(Side::First, v5);
            p.add(Side::Second, v4);
            "B1"
        }
        (Config::Chain, Some(v)) if v == v2 => {
            p.add(Side::First, v4);
            p.add(Side::Second, v5);
            "B2"
        }
        (Config::Chain, Some(_)) => {
            p.add(Side::First, v5);
            p.add(Side::Second, v4);
            "B3"
        }
        (Config::Chain, None) => {
            p.add(Side::First, v4);
            p.add(Side::Second, v5);
            "B4"
        }
    };
    Ok((p, case))
}
