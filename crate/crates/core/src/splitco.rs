//! Split graphs (a clique plus an independent set) and co-bipartite graphs
//! (two cliques), with their direct LD-partition constructions.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::check::check_ld_partition;
use crate::error::{InternalAssertionFailure, LdError};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::partition::LdPartition;
use crate::GraphClass;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitDecomposition {
    #[serde(rename = "X")]
    pub x: VertexSet,
    #[serde(rename = "Y")]
    pub y: VertexSet,
    /// Clique vertices with no neighbour in the independent set.
    #[serde(rename = "S")]
    pub s: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoBipDecomposition {
    #[serde(rename = "X")]
    pub x: VertexSet,
    #[serde(rename = "Y")]
    pub y: VertexSet,
    /// Vertices of `X` with no neighbour in `Y`.
    #[serde(rename = "S1")]
    pub s1: VertexSet,
    /// Vertices of `Y` with no neighbour in `X`.
    #[serde(rename = "S2")]
    pub s2: VertexSet,
}

fn not_in(class: GraphClass, reason: String) -> LdError {
    LdError::NotInClass { class, reason }
}

fn assertion(algorithm: &'static str, step: &str, message: String, g: &Graph) -> LdError {
    InternalAssertionFailure::new(algorithm, step, message, g).into()
}

/// Vertices of `among` with no neighbour in `other`.
fn cross_isolated(g: &Graph, among: &VertexSet, other: &VertexSet) -> VertexSet {
    among.iter().filter(|&v| g.neighbors(v).all(|w| !other.contains(w))).collect()
}

fn trace(g: &Graph, v: Vertex, d: &VertexSet) -> VertexSet {
    g.open_neighborhood(v).intersection(d)
}

/// Splits `g` into a clique `X` and an independent set `Y`.
///
/// `X` is the longest clique prefix of the vertices sorted by degree
/// (descending, then by label). If `g` is split at all, this prefix works.
pub fn split_partition(g: &Graph) -> Result<SplitDecomposition, LdError> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut x = VertexSet::with_capacity(g.n());
    for &v in &order {
        if x.iter().all(|u| g.has_edge(u, v)) {
            x.insert(v);
        } else {
            break;
        }
    }
    let y = VertexSet::full(g.n()).difference(&x);
    for u in y.iter() {
        if let Some(w) = g.neighbors(u).find(|&w| w > u && y.contains(w)) {
            return Err(not_in(
                GraphClass::Split,
                format!("{u} and {w} are adjacent outside the greedy clique {x:?}"),
            ));
        }
    }
    let s = cross_isolated(g, &x, &y);
    Ok(SplitDecomposition { x, y, s })
}

fn common_preconditions(g: &Graph) -> Result<(), LdError> {
    if g.n() == 0 {
        return Err(LdError::TooSmall { n: 0, min: 1 });
    }
    if let Some(v) = g.isolated_vertices().first() {
        return Err(LdError::HasIsolated(v));
    }
    if let Some(p) = g.find_twin_pair() {
        return Err(LdError::HasTwins(p));
    }
    Ok(())
}

fn verified(algorithm: &'static str, g: &Graph, p: LdPartition) -> Result<LdPartition, LdError> {
    let report = check_ld_partition(g, &p)?;
    if report.passed() {
        Ok(p)
    } else {
        Err(assertion(algorithm, "verification", format!("{p:?} fails the check: {report:?}"), g))
    }
}

/// LD-partition of a twin-free, isolate-free split graph.
pub fn ld_partition_split(g: &Graph) -> Result<LdPartition, LdError> {
    const ALG: &str = "split";
    let d = split_partition(g)?;
    common_preconditions(g)?;
    match d.s.len() {
        0 => verified(ALG, g, LdPartition::new(d.x, d.y)),
        1 => {
            let a = d.s.first().expect("one element");
            let rest = d.x.difference(&d.s);
            if let Some(c) = d.y.iter().find(|&c| trace(g, c, &d.x) == rest) {
                return Err(assertion(ALG, "S nonempty", format!("{c} and {a} are twins"), g));
            }
            verified(ALG, g, LdPartition::new(rest, d.y.union(&d.s)))
        }
        k => Err(assertion(ALG, "S", format!("{k} clique vertices {:?} without neighbours in Y", d.s), g)),
    }
}

/// Splits `g` into two cliques by 2-colouring its complement. In each
/// component of the complement the smallest vertex goes to `X`.
pub fn cobipartite_partition(g: &Graph) -> Result<CoBipDecomposition, LdError> {
    let h = g.complement();
    let n = g.n();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in h.neighbors(u) {
                match colour[w] {
                    None => {
                        colour[w] = Some(!colour[u].expect("coloured"));
                        parent[w] = Some(u);
                        queue.push_back(w);
                    }
                    Some(c) if c == colour[u].expect("coloured") => {
                        let cycle = odd_cycle(&parent, u, w);
                        return Err(not_in(
                            GraphClass::Cobipartite,
                            format!("complement has the odd cycle {cycle:?}"),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let x: VertexSet = (0..n).filter(|&v| colour[v] == Some(false)).collect();
    let y = VertexSet::full(n).difference(&x);
    let s1 = cross_isolated(g, &x, &y);
    let s2 = cross_isolated(g, &y, &x);
    Ok(CoBipDecomposition { x, y, s1, s2 })
}

/// Closes the BFS-tree paths from `u` and `w` (same colour, adjacent) into a cycle.
fn odd_cycle(parent: &[Option<Vertex>], u: Vertex, w: Vertex) -> Vec<Vertex> {
    let up = |mut v: Vertex| {
        let mut path = vec![v];
        while let Some(p) = parent[v] {
            path.push(p);
            v = p;
        }
        path
    };
    let pu = up(u);
    let pw = up(w);
    let lca = *pu.iter().find(|v| pw.contains(v)).expect("same BFS tree");
    let mut cycle: Vec<Vertex> = pu.iter().copied().take_while(|&v| v != lca).collect();
    cycle.push(lca);
    let back: Vec<Vertex> = pw.iter().copied().take_while(|&v| v != lca).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

/// LD-partition of a twin-free, isolate-free co-bipartite graph.
pub fn ld_partition_cobipartite(g: &Graph) -> Result<LdPartition, LdError> {
    const ALG: &str = "cobipartite";
    let d = cobipartite_partition(g)?;
    common_preconditions(g)?;
    if d.s1.len() > 1 || d.s2.len() > 1 {
        return Err(assertion(ALG, "S1/S2", format!("S1={:?}, S2={:?} with more than one vertex", d.s1, d.s2), g));
    }
    let p = match (d.s1.first(), d.s2.first()) {
        (None, None) => LdPartition::new(d.x, d.y),
        (Some(_), Some(_)) => LdPartition::new(
            d.x.difference(&d.s1).union(&d.s2),
            d.y.difference(&d.s2).union(&d.s1),
        ),
        (Some(a), None) => one_sided(g, &d.x, &d.y, a)?,
        (None, Some(c)) => one_sided(g, &d.y, &d.x, c)?,
    };
    verified(ALG, g, p)
}

/// Only `x ∈ X` lacks neighbours on the other side.
fn one_sided(g: &Graph, xs: &VertexSet, ys: &VertexSet, x: Vertex) -> Result<LdPartition, LdError> {
    let rest = xs.difference(&VertexSet::from([x]));
    let full: Vec<Vertex> = ys.iter().filter(|&y| trace(g, y, xs) == rest).collect();
    match full[..] {
        [] => Ok(LdPartition::new(rest, ys.union(&VertexSet::from([x])))),
        [y] => {
            let mut d1 = rest;
            d1.insert(y);
            let mut d2 = ys.clone();
            d2.remove(y);
            d2.insert(x);
            Ok(LdPartition::new(d1, d2))
        }
        _ => Err(assertion(
            "cobipartite",
            "branch iii",
            format!("{full:?} all see exactly {rest:?}, so they are twins"),
            g,
        )),
    }
}
