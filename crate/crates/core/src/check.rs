//! Certification of dominating, locating and locating-dominating sets.
//!
//! Every failing [`CheckReport`] carries the lexicographically smallest
//! witness, so reports are stable across runs.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::partition::{LdPartition, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    None,
    /// A vertex outside the set has no neighbour in it.
    Undominated,
    /// Two vertices outside the set have the same trace on it.
    Collision,
    /// A vertex lies in both sides of a partition.
    Overlap,
    /// A vertex lies in neither side of a partition.
    NotCover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Vertex(Vertex),
    Pair(Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub failure_kind: FailureKind,
    pub witness: Option<Witness>,
    /// For partition checks: the side whose LD property failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

impl CheckReport {
    pub fn pass() -> Self {
        Self { verdict: Verdict::Pass, failure_kind: FailureKind::None, witness: None, side: None }
    }

    fn fail(kind: FailureKind, witness: Witness) -> Self {
        Self { verdict: Verdict::Fail, failure_kind: kind, witness: Some(witness), side: None }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn ensure_subset(g: &Graph, d: &VertexSet) -> Result<(), GraphError> {
    match d.last() {
        Some(v) if v >= g.n() => Err(GraphError::NotAVertex { v, n: g.n() }),
        _ => Ok(()),
    }
}

fn trace(g: &Graph, v: Vertex, d: &VertexSet) -> FixedBitSet {
    let mut t = g.row(v).clone();
    t.intersect_with(d.bits());
    t
}

pub fn check_dominating(g: &Graph, d: &VertexSet) -> Result<CheckReport, GraphError> {
    ensure_subset(g, d)?;
    let undominated = g
        .vertices()
        .find(|&v| !d.contains(v) && g.row(v).is_disjoint(d.bits()));
    Ok(match undominated {
        Some(v) => CheckReport::fail(FailureKind::Undominated, Witness::Vertex(v)),
        None => CheckReport::pass(),
    })
}

/// Distinctness of traces `N(v) ∩ D` over vertices outside `D`. An empty
/// trace is allowed here; domination is checked separately.
pub fn check_locating(g: &Graph, d: &VertexSet) -> Result<CheckReport, GraphError> {
    ensure_subset(g, d)?;
    let mut traces: Vec<(FixedBitSet, Vertex)> = g
        .vertices()
        .filter(|&v| !d.contains(v))
        .map(|v| (trace(g, v, d), v))
        .collect();
    traces.sort_unstable_by(|a, b| a.0.as_slice().cmp(b.0.as_slice()).then(a.1.cmp(&b.1)));
    let collision = traces
        .windows(2)
        .filter(|w| w[0].0 == w[1].0)
        .map(|w| (w[0].1, w[1].1))
        .min();
    Ok(match collision {
        Some((u, v)) => CheckReport::fail(FailureKind::Collision, Witness::Pair(u, v)),
        None => CheckReport::pass(),
    })
}

pub fn check_ld_set(g: &Graph, d: &VertexSet) -> Result<CheckReport, GraphError> {
    let dom = check_dominating(g, d)?;
    if !dom.passed() {
        return Ok(dom);
    }
    check_locating(g, d)
}

pub fn check_ld_partition(g: &Graph, p: &LdPartition) -> Result<CheckReport, GraphError> {
    ensure_subset(g, &p.d1)?;
    ensure_subset(g, &p.d2)?;
    if let Some(v) = p.d1.intersection(&p.d2).first() {
        return Ok(CheckReport::fail(FailureKind::Overlap, Witness::Vertex(v)));
    }
    if let Some(v) = g.vertices().find(|&v| !p.d1.contains(v) && !p.d2.contains(v)) {
        return Ok(CheckReport::fail(FailureKind::NotCover, Witness::Vertex(v)));
    }
    for side in [Side::First, Side::Second] {
        let mut r = check_ld_set(g, p.side(side))?;
        if !r.passed() {
            r.side = Some(side);
            return Ok(r);
        }
    }
    Ok(CheckReport::pass())
}

/// Convenience predicate over [`check_ld_partition`].
pub fn is_ld_partition(g: &Graph, p: &LdPartition) -> bool {
    check_ld_partition(g, p).is_ok_and(|r| r.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn fan4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap()
    }

    #[test]
    fn dominating() {
        assert!(check_dominating(&p4(), &VertexSet::from([1, 2])).unwrap().passed());
        let r = check_dominating(&p4(), &VertexSet::new()).unwrap();
        assert_eq!(r.failure_kind, FailureKind::Undominated);
        assert_eq!(r.witness, Some(Witness::Vertex(0)));
        assert!(check_dominating(&p4(), &VertexSet::full(4)).unwrap().passed());
    }

    #[test]
    fn locating() {
        assert!(check_locating(&p4(), &VertexSet::from([0, 3])).unwrap().passed());
        let r = check_locating(&c4(), &VertexSet::from([1])).unwrap();
        assert_eq!(r.failure_kind, FailureKind::Collision);
        assert_eq!(r.witness, Some(Witness::Pair(0, 2)));
        assert!(check_locating(&c4(), &VertexSet::full(4)).unwrap().passed());
        // a single empty trace is not a collision
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(check_locating(&p3, &VertexSet::from([0])).unwrap().passed());
        assert!(!check_locating(&p4(), &VertexSet::from([0])).unwrap().passed());
    }

    #[test]
    fn ld_set() {
        assert!(check_ld_set(&p4(), &VertexSet::from([0, 3])).unwrap().passed());
        // both 2 and 3 are undominated; the smallest is reported
        let r = check_ld_set(&p4(), &VertexSet::from([0])).unwrap();
        assert_eq!(r.failure_kind, FailureKind::Undominated);
        assert_eq!(r.witness, Some(Witness::Vertex(2)));
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(check_ld_set(&k2, &VertexSet::from([0])).unwrap().passed());
    }

    #[test]
    fn partitions() {
        let fan = LdPartition::new(VertexSet::from([0, 1]), VertexSet::from([2, 3]));
        assert!(check_ld_partition(&fan4(), &fan).unwrap().passed());
        let p = LdPartition::new(VertexSet::from([0, 2]), VertexSet::from([1, 3]));
        assert!(check_ld_partition(&p4(), &p).unwrap().passed());
        let bad = LdPartition::new(VertexSet::from([0, 1, 2]), VertexSet::from([2, 3]));
        let r = check_ld_partition(&p4(), &bad).unwrap();
        assert_eq!(r.failure_kind, FailureKind::Overlap);
        assert_eq!(r.witness, Some(Witness::Vertex(2)));
        let short = LdPartition::new(VertexSet::from([0, 1]), VertexSet::from([3]));
        let r = check_ld_partition(&p4(), &short).unwrap();
        assert_eq!(r.failure_kind, FailureKind::NotCover);
        assert_eq!(r.witness, Some(Witness::Vertex(2)));
        let lopsided = LdPartition::new(VertexSet::from([0, 1]), VertexSet::from([2, 3]));
        let r = check_ld_partition(&p4(), &lopsided).unwrap();
        assert_eq!(r.side, Some(Side::First));
        assert_eq!(r.witness, Some(Witness::Vertex(3)));
    }

    #[test]
    fn rejects_foreign_vertices() {
        assert_eq!(
            check_ld_set(&p4(), &VertexSet::from([7])),
            Err(GraphError::NotAVertex { v: 7, n: 4 })
        );
    }
}
