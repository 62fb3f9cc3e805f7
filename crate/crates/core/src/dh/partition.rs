//! LD-partitions of isolate-free, twin-free distance-hereditary graphs.
//!
//! Induction on the decomposition tree. A deepest internal node `t` has two
//! leaf children `a`, `b`; twin-freeness forces `t = ⊕(a, b)`, so `b` is a
//! pendant of `a`. Depending on the parent `t'` and the sibling of `t`, a few
//! vertices are removed, the smaller graph is solved recursively, and the
//! partition is extended:
//!
//! | case | shape of `t'`                 | removed     | extension                        |
//! |------|-------------------------------|-------------|----------------------------------|
//! | 1    | `⊕(c, t)`, `G-{a,b}` twin-free | `a, b`      | `c ∈ D1`; `D1 += b`, `D2 += a`    |
//! | 1.1  | `⊕(c, t)`, `c`,`x` false twins | `a, b, c`   | `x ∈ D1`; `D1 += c, b`, `D2 += a` |
//! | 1.2  | `⊕(c, t)`, `c`,`x` true twins  | `b`         | `c ∈ D1`, `a ∈ D2`; `D1 += b`     |
//! | 2    | `⊕(t, c)`                     | impossible: `b`, `c` are twins  |    |
//! | 3    | `⊙(t, c)`                     | `a, b`      | `c ∈ D1`; `D1 += a`, `D2 += b`    |
//! | 4.1  | `⊗(t, c)`, `G-{a,b}` twin-free | `a, b`      | `c ∈ D1`; `D1 += a`, `D2 += b`    |
//! | 4.2  | `⊗(t, c)`, `c`,`x` false twins | `a, b, c`   | `x ∈ D1`; `D1 += c, b`, `D2 += a` |
//! | 5-7  | sibling `⊕(c, d)`             | hanging pair | kept top in `D1`; `D1 += top`, `D2 += pendant` |
//!
//! Sides of the recursive result are swapped to meet the placements. Each
//! extension is re-checked before it is returned.
//!
//! Several "the reduced graph is twin-free" steps do not hold on every input:
//! the reduced graph can contain twins, so it is not a valid recursive
//! instance. When that happens for the deepest node, the other leaf-pair
//! nodes are tried, then a tree from a different elimination order. If no
//! tree case applies, two generic reductions follow:
//!
//! * pendant pair: for any pendant `b` with neighbour `a`, every LD-partition
//!   of `G - {a, b}` extends by `D1 += a`, `D2 += b`. The new trace of `b`
//!   is `{a}` in `D1`, and `a`'s trace in `D2` is the only one containing `b`;
//!   other traces only gain `a`, which no old trace contains.
//! * single pendant: solve `G - b` and put `b` opposite its neighbour, kept
//!   only if the check passes.
//! * closure: start from a pendant pair and keep deleting one vertex of each
//!   twin pair (or an isolated vertex) the deletion creates, up to
//!   [`MAX_CLOSURE`] vertices; solve the rest and try every side assignment
//!   of the deleted vertices.
//!
//! The exhaustive oracle is the last resort for small graphs. Every detour is
//! recorded in [`DhTrace`].

use std::collections::BTreeMap;

use serde::Serialize;

use super::tree::{DecompTree, NodeId, Op};
use super::{build_decomposition_tree_with, check_dh_preconditions, is_distance_hereditary, EliminationOrder};
use crate::check::check_ld_partition;
use crate::error::{InternalAssertionFailure, LdError};
use crate::graph::{Graph, Vertex};
use crate::oracle::{ld_partition_exists, DEFAULT_PARTITION_CAP};
use crate::partition::{LdPartition, Side};

const ALGORITHM: &str = "ld_partition_dh";

/// Graphs up to this order are solved by exhaustive search.
pub const BASE_ORDER: usize = 6;

/// Largest vertex set removed by the closure reduction.
pub const MAX_CLOSURE: usize = 6;

/// At most this many detour descriptions are kept in a trace.
const MAX_RECORDED_GAPS: usize = 32;

/// A partition together with the placements the construction relied on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlacedPartition {
    pub partition: LdPartition,
    pub anchors: Vec<(Vertex, Side)>,
}

impl PlacedPartition {
    /// Orient `p` so that `v` is on the first side.
    pub fn anchored(p: LdPartition, v: Vertex) -> Self {
        Self { partition: p.oriented(v, Side::First), anchors: vec![(v, Side::First)] }
    }

    /// Record that `v` must be on `side`; `false` if it is not.
    pub fn require(&mut self, v: Vertex, side: Side) -> bool {
        self.anchors.push((v, side));
        self.partition.side_of(v) == Some(side)
    }

    pub fn anchors_hold(&self) -> bool {
        self.anchors.iter().all(|&(v, s)| self.partition.side_of(v) == Some(s))
    }

    pub fn add(&mut self, side: Side, v: Vertex) {
        self.partition.add(side, v);
    }
}

/// How an instance was solved.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DhTrace {
    pub components: usize,
    /// Subproblems of order at most [`BASE_ORDER`], solved exhaustively.
    pub base_cases: usize,
    /// Reduction steps by case name ("1", "1.1", .., "7").
    pub cases: BTreeMap<String, usize>,
    /// Times the deepest leaf-pair node could not be used and another node
    /// of the same tree was.
    pub other_node: usize,
    /// Times a tree from the alternative elimination order was needed.
    pub other_tree: usize,
    /// Times no tree case applied and a generic pendant reduction did.
    pub generic: usize,
    /// Times nothing else applied and the oracle solved the subproblem.
    pub oracle_fallbacks: usize,
    /// Extensions that failed the final check; each one is a counterexample
    /// to the corresponding construction step.
    pub extension_failures: usize,
    /// The same failures by case name.
    pub rejected: BTreeMap<String, usize>,
    /// Number of skipped reductions of a deepest node.
    pub gap_count: usize,
    /// The first few skipped reductions, with the reason.
    pub gaps: Vec<String>,
}

impl DhTrace {
    fn gap(&mut self, reason: String) {
        self.gap_count += 1;
        if self.gaps.len() < MAX_RECORDED_GAPS {
            self.gaps.push(reason);
        }
    }
}

pub fn ld_partition_dh(g: &Graph) -> Result<LdPartition, LdError> {
    ld_partition_dh_traced(g).map(|(p, _)| p)
}

pub fn ld_partition_dh_traced(g: &Graph) -> Result<(LdPartition, DhTrace), LdError> {
    check_dh_preconditions(g)?;
    let mut solver = Solver { trace: DhTrace::default(), fallback_cap: DEFAULT_PARTITION_CAP };
    let p = solver.solve(g)?;
    let report = check_ld_partition(g, &p)?;
    if !report.passed() {
        return Err(InternalAssertionFailure::new(ALGORITHM, "final", format!("result fails the check: {report:?}"), g).into());
    }
    Ok((p, solver.trace))
}

enum Attempt {
    Done(LdPartition, &'static str),
    /// The reduction is not a valid recursive instance, or its extension
    /// failed; the reason is kept for diagnostics.
    Skip(String),
}

struct Solver {
    trace: DhTrace,
    fallback_cap: usize,
}

fn assertion(step: &str, message: String, g: &Graph) -> LdError {
    InternalAssertionFailure::new(ALGORITHM, step, message, g).into()
}

/// `G - remove` if it is again a valid instance (isolate-free, twin-free).
fn reduce(g: &Graph, remove: &[Vertex]) -> Result<(Graph, crate::graph::VertexMap), String> {
    let (h, map) = g.without(remove);
    if let Some(v) = h.isolated_vertices().first() {
        return Err(format!("G-{remove:?} has isolated vertex {}", map.to_old(v)));
    }
    if let Some(p) = h.find_twin_pair() {
        return Err(format!(
            "G-{remove:?} has {:?} twins {} and {}",
            p.kind,
            map.to_old(p.u),
            map.to_old(p.v)
        ));
    }
    Ok((h, map))
}

impl Solver {
    /// Component by component.
    fn solve(&mut self, g: &Graph) -> Result<LdPartition, LdError> {
        let comps = g.connected_components();
        if comps.len() == 1 {
            self.trace.components += 1;
            return self.solve_connected(g);
        }
        let mut out = LdPartition::default();
        for comp in comps {
            let (h, map) = g.induced_subgraph(&comp);
            self.trace.components += 1;
            out.merge(&self.solve_connected(&h)?.lift(&map));
        }
        Ok(out)
    }

    fn oracle(&mut self, g: &Graph, step: &str) -> Result<Option<LdPartition>, LdError> {
        Ok(ld_partition_exists(g, self.fallback_cap.max(BASE_ORDER))
            .map_err(|e| assertion(step, e.to_string(), g))?
            .partition)
    }

    fn solve_connected(&mut self, g: &Graph) -> Result<LdPartition, LdError> {
        if g.n() <= BASE_ORDER {
            self.trace.base_cases += 1;
            return self.oracle(g, "base")?.ok_or_else(|| {
                assertion("base", "no LD-partition exists for a small twin-free instance".into(), g)
            });
        }
        let mut attempts = Vec::new();
        for (round, order) in [EliminationOrder::LargestFirst, EliminationOrder::SmallestFirst].into_iter().enumerate() {
            let tree = build_decomposition_tree_with(g, order)?;
            for (i, t) in ordered_cherries(&tree).into_iter().enumerate() {
                match self.try_node(g, &tree, t)? {
                    Attempt::Done(p, case) => {
                        *self.trace.cases.entry(case.to_string()).or_default() += 1;
                        if round > 0 {
                            self.trace.other_tree += 1;
                        } else if i > 0 {
                            self.trace.other_node += 1;
                        }
                        return Ok(p);
                    }
                    Attempt::Skip(reason) => {
                        if round == 0 && i == 0 {
                            self.trace.gap(reason.clone());
                        }
                        attempts.push(reason);
                    }
                }
            }
        }
        if let Some((p, case)) = self.generic(g, &mut attempts)? {
            *self.trace.cases.entry(case.to_string()).or_default() += 1;
            self.trace.generic += 1;
            return Ok(p);
        }
        if g.n() <= self.fallback_cap {
            if let Some(p) = self.oracle(g, "fallback")? {
                self.trace.oracle_fallbacks += 1;
                return Ok(p);
            }
        }
        let mut e = InternalAssertionFailure::new(ALGORITHM, "select", "no reduction applies", g);
        e.attempts = attempts;
        Err(e.into())
    }

    fn generic(&mut self, g: &Graph, attempts: &mut Vec<String>) -> Result<Option<(LdPartition, &'static str)>, LdError> {
        let pendants: Vec<(Vertex, Vertex)> = g
            .vertices()
            .filter(|&b| g.degree(b) == 1)
            .map(|b| (g.neighbors(b).next().expect("degree one"), b))
            .collect();
        for &(a, b) in &pendants {
            let Ok((h, map)) = reduce(g, &[a, b]) else { continue };
            let mut p = self.recurse(&h, &map)?;
            p.add(Side::First, a);
            p.add(Side::Second, b);
            if let Attempt::Done(p, case) = self.finish(g, PlacedPartition { partition: p, anchors: Vec::new() }, "pendant pair")? {
                return Ok(Some((p, case)));
            }
        }
        for &(a, b) in &pendants {
            let Ok((h, map)) = reduce(g, &[b]) else { continue };
            let p = self.recurse(&h, &map)?;
            let mut placed = PlacedPartition::anchored(p, a);
            placed.add(Side::Second, b);
            match self.finish(g, placed, "single pendant")? {
                Attempt::Done(p, case) => return Ok(Some((p, case))),
                Attempt::Skip(why) => attempts.push(why),
            }
        }
        for &(a, b) in &pendants {
            let Some(removed) = closure(g, a, b) else { continue };
            let (h, map) = g.without(&removed);
            let base = self.recurse(&h, &map)?;
            for mask in 0u32..1 << removed.len() {
                let mut p = base.clone();
                for (i, &v) in removed.iter().enumerate() {
                    p.add(if mask >> i & 1 == 0 { Side::First } else { Side::Second }, v);
                }
                if check_ld_partition(g, &p)?.passed() {
                    return Ok(Some((p, "closure")));
                }
            }
            attempts.push(format!("closure {removed:?}: no assignment extends the reduced partition"));
        }
        attempts.push(format!("no pendant of {pendants:?} leaves a valid instance"));
        Ok(None)
    }

    /// Solve `g - remove` recursively and hand the lifted partition back.
    fn recurse(&mut self, h: &Graph, map: &crate::graph::VertexMap) -> Result<LdPartition, LdError> {
        Ok(self.solve(h)?.lift(map))
    }

    fn finish(&mut self, g: &Graph, placed: PlacedPartition, case: &'static str) -> Result<Attempt, LdError> {
        let report = check_ld_partition(g, &placed.partition)?;
        if report.passed() {
            Ok(Attempt::Done(placed.partition, case))
        } else {
            self.trace.extension_failures += 1;
            *self.trace.rejected.entry(case.to_string()).or_default() += 1;
            Ok(Attempt::Skip(format!("case {case}: extension fails the check: {report:?}")))
        }
    }

    fn try_node(&mut self, g: &Graph, tree: &DecompTree, t: NodeId) -> Result<Attempt, LdError> {
        let (l, r) = tree.children(t).expect("cherry is internal");
        let a = tree.leaf_vertex(l).expect("leaf");
        let b = tree.leaf_vertex(r).expect("leaf");
        let op = tree.op(t).expect("internal");
        if op != Op::Attach {
            return Err(assertion("observation", format!("leaf pair {a},{b} joined by {} are twins", op.symbol()), g));
        }
        let Some(tp) = tree.parent(t) else {
            return Err(assertion("observation", "leaf pair node is the root".into(), g));
        };
        let (pl, pr) = tree.children(tp).expect("parent is internal");
        let t_is_left = pl == t;
        let s = if t_is_left { pr } else { pl };
        let parent_op = tree.op(tp).expect("internal");
        if let Some(c) = tree.leaf_vertex(s) {
            return match parent_op {
                Op::Attach if !t_is_left => self.case1(g, a, b, c),
                Op::Attach => Err(assertion("case 2", format!("{b} and {c} are pendants of {a}"), g)),
                Op::FalseTwin => self.case3(g, a, b, c),
                Op::TrueTwin => self.case4(g, a, b, c),
            };
        }
        let sibling_pair = tree
            .children(s)
            .and_then(|(sl, sr)| Some((tree.leaf_vertex(sl)?, tree.leaf_vertex(sr)?)));
        let Some((c, d)) = sibling_pair else {
            return Ok(Attempt::Skip(format!("node over {a},{b}: sibling subtree is larger than a leaf pair")));
        };
        let sibling_op = tree.op(s).expect("internal");
        if sibling_op != Op::Attach {
            return Err(assertion("observation", format!("leaf pair {c},{d} joined by {} are twins", sibling_op.symbol()), g));
        }
        let case = match parent_op {
            Op::Attach => "5",
            Op::FalseTwin => "6",
            Op::TrueTwin => "7",
        };
        // For ⊕(sibling, t) only `c` stays visible above t', so the pair
        // under t hangs off it and is the one removed.
        if parent_op == Op::Attach && !t_is_left {
            self.case567(g, case, (c, d), (a, b))
        } else {
            self.case567(g, case, (a, b), (c, d))
        }
    }

    fn case1(&mut self, g: &Graph, a: Vertex, b: Vertex, c: Vertex) -> Result<Attempt, LdError> {
        let (g1, map) = g.without(&[a, b]);
        if let Some(v) = g1.isolated_vertices().first() {
            return Ok(Attempt::Skip(format!("case 1: G-{{a,b}} has isolated vertex {}", map.to_old(v))));
        }
        let c1 = map.to_new(c).expect("c survives");
        let Some(pair) = g1.find_twin_pair() else {
            let p = self.recurse(&g1, &map)?;
            let mut placed = PlacedPartition::anchored(p, c);
            placed.add(Side::First, b);
            placed.add(Side::Second, a);
            return self.finish(g, placed, "1");
        };
        let Some(tw) = g1.find_twin_of(c1) else {
            return Err(assertion(
                "case 1",
                format!("G-{{a,b}} has twins {} and {} not involving c={c}", map.to_old(pair.u), map.to_old(pair.v)),
                g,
            ));
        };
        let x = map.to_old(if tw.u == c1 { tw.v } else { tw.u });
        match tw.kind {
            crate::graph::TwinKind::Open => self.remove_c_and_pair(g, a, b, c, x, "1.1"),
            crate::graph::TwinKind::Closed => {
                let (h, map) = match reduce(g, &[b]) {
                    Ok(r) => r,
                    Err(why) => return Ok(Attempt::Skip(format!("case 1.2: {why}"))),
                };
                let p = self.recurse(&h, &map)?;
                let mut placed = PlacedPartition::anchored(p, c);
                if !placed.require(a, Side::Second) {
                    return Err(assertion("case 1.2", format!("{c} and {a} share a side of the reduced partition"), g));
                }
                placed.add(Side::First, b);
                self.finish(g, placed, "1.2")
            }
        }
    }

    /// Shared tail of cases 1.1 and 4.2: solve `G - {a,b,c}` with the twin
    /// `x` of `c` on the first side, then `D1 += c, b` and `D2 += a`.
    fn remove_c_and_pair(&mut self, g: &Graph, a: Vertex, b: Vertex, c: Vertex, x: Vertex, case: &'static str) -> Result<Attempt, LdError> {
        let (h, map) = match reduce(g, &[a, b, c]) {
            Ok(r) => r,
            Err(why) => return Ok(Attempt::Skip(format!("case {case}: {why}"))),
        };
        let p = self.recurse(&h, &map)?;
        let mut placed = PlacedPartition::anchored(p, x);
        placed.add(Side::First, c);
        placed.add(Side::First, b);
        placed.add(Side::Second, a);
        self.finish(g, placed, case)
    }

    fn case3(&mut self, g: &Graph, a: Vertex, b: Vertex, c: Vertex) -> Result<Attempt, LdError> {
        let (h, map) = match reduce(g, &[a, b]) {
            Ok(r) => r,
            Err(why) => return Ok(Attempt::Skip(format!("case 3: {why}"))),
        };
        let p = self.recurse(&h, &map)?;
        let mut placed = PlacedPartition::anchored(p, c);
        placed.add(Side::First, a);
        placed.add(Side::Second, b);
        self.finish(g, placed, "3")
    }

    fn case4(&mut self, g: &Graph, a: Vertex, b: Vertex, c: Vertex) -> Result<Attempt, LdError> {
        let (g2, map) = g.without(&[a, b]);
        if let Some(v) = g2.isolated_vertices().first() {
            return Ok(Attempt::Skip(format!("case 4: G-{{a,b}} has isolated vertex {}", map.to_old(v))));
        }
        let c2 = map.to_new(c).expect("c survives");
        if g2.is_twin_free() {
            let p = self.recurse(&g2, &map)?;
            let mut placed = PlacedPartition::anchored(p, c);
            placed.add(Side::First, a);
            placed.add(Side::Second, b);
            return self.finish(g, placed, "4.1");
        }
        let Some(tw) = g2.find_twin_of(c2) else {
            return Err(assertion("case 4.2", format!("G-{{a,b}} has twins not involving c={c}"), g));
        };
        if tw.kind != crate::graph::TwinKind::Open {
            return Err(assertion("case 4.2", format!("{c} has a true twin in G-{{a,b}}"), g));
        }
        let x = map.to_old(if tw.u == c2 { tw.v } else { tw.u });
        // G' drops the edges from a to the rest of N(c); it must stay
        // distance-hereditary for the case 1.1 argument to apply.
        let cut: Vec<(Vertex, Vertex)> = g.neighbors(c).filter(|&w| w != a).map(|w| (a, w)).collect();
        let g_cut = g.delete_edges(&cut).map_err(|e| assertion("case 4.2", e.to_string(), g))?;
        if !is_distance_hereditary(&g_cut).is_dh {
            return Err(assertion("case 4.2", "G' is not distance-hereditary".into(), g));
        }
        self.remove_c_and_pair(g, a, b, c, x, "4.2")
    }

    /// Cases 5 to 7: `keep = (top, pendant)` stays, `drop` is removed and
    /// added back with its top beside `keep.0`.
    fn case567(&mut self, g: &Graph, case: &'static str, keep: (Vertex, Vertex), drop: (Vertex, Vertex)) -> Result<Attempt, LdError> {
        let (h, map) = match reduce(g, &[drop.0, drop.1]) {
            Ok(r) => r,
            Err(why) => return Ok(Attempt::Skip(format!("case {case}: {why}"))),
        };
        let p = self.recurse(&h, &map)?;
        let mut placed = PlacedPartition::anchored(p, keep.0);
        if !placed.require(keep.1, Side::Second) {
            return Err(assertion(&format!("case {case}"), format!("pendant {} shares a side with {}", keep.1, keep.0), g));
        }
        placed.add(Side::First, drop.0);
        placed.add(Side::Second, drop.1);
        self.finish(g, placed, case)
    }
}

/// Vertices to delete, starting from the pendant pair `a, b`, so that the
/// rest is isolate-free and twin-free. Of each twin pair, the vertex adjacent
/// to a deleted vertex goes.
fn closure(g: &Graph, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let mut removed = vec![a, b];
    while removed.len() <= MAX_CLOSURE {
        let (h, map) = g.without(&removed);
        if h.n() == 0 {
            return None;
        }
        let next = if let Some(v) = h.isolated_vertices().first() {
            map.to_old(v)
        } else if let Some(p) = h.find_twin_pair() {
            let (u, v) = (map.to_old(p.u), map.to_old(p.v));
            if removed.iter().any(|&r| g.has_edge(r, u)) {
                u
            } else {
                v
            }
        } else {
            return Some(removed);
        };
        removed.push(next);
    }
    None
}

/// Internal nodes with two leaf children, deepest first, ties broken by the
/// smallest leaf label.
fn ordered_cherries(tree: &DecompTree) -> Vec<NodeId> {
    let depth = tree.depths();
    let mut cs: Vec<(std::cmp::Reverse<usize>, Vertex, NodeId)> = tree
        .cherries()
        .into_iter()
        .map(|t| {
            let (l, r) = tree.children(t).expect("internal");
            let lo = tree.leaf_vertex(l).unwrap().min(tree.leaf_vertex(r).unwrap());
            (std::cmp::Reverse(depth[t]), lo, t)
        })
        .collect();
    cs.sort_unstable();
    cs.into_iter().map(|c| c.2).collect()
}
