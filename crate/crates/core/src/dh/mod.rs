//! Distance-hereditary graphs: recognition, decomposition trees and
//! LD-partitions.
//!
//! Recognition uses the pendant/twin characterisation: a graph is
//! distance-hereditary iff it can be reduced to nothing by repeatedly deleting
//! a vertex of degree at most one or a vertex that has a twin. Since the class
//! is hereditary and closed under adding pendants and twins, the greedy
//! reduction never needs to backtrack.

mod partition;
mod tree;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::LdError;
use crate::graph::{Graph, TwinKind, Vertex, VertexSet};
use crate::GraphClass;

pub use partition::{ld_partition_dh, ld_partition_dh_traced, DhTrace, PlacedPartition};
pub use tree::{DecompTree, Node, NodeId, Op, TreeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "via")]
pub enum Elimination {
    Pendant { at: Vertex },
    Twin { of: Vertex, kind: TwinKind },
    /// Last vertex of its component.
    Isolated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    pub vertex: Vertex,
    #[serde(flatten)]
    pub via: Elimination,
}

/// Which removable vertex the reduction takes first. Different orders give
/// different decomposition trees of the same graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EliminationOrder {
    /// Largest removable vertex first, pendants before twins.
    #[default]
    LargestFirst,
    /// Smallest removable vertex first, twins before pendants.
    SmallestFirst,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DhRecognition {
    pub is_dh: bool,
    pub elimination: Vec<EliminationStep>,
    /// Vertices left when the reduction got stuck; empty on success.
    pub remainder: VertexSet,
}

pub fn is_distance_hereditary(g: &Graph) -> DhRecognition {
    eliminate(g, EliminationOrder::default())
}

fn eliminate(g: &Graph, order: EliminationOrder) -> DhRecognition {
    let n = g.n();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut elimination = Vec::with_capacity(n);
    let mut remaining = n;
    while remaining > 0 {
        match removable(g, &alive, order) {
            Some(step) => {
                alive.set(step.vertex, false);
                remaining -= 1;
                elimination.push(step);
            }
            None => {
                return DhRecognition { is_dh: false, elimination, remainder: alive.ones().collect() };
            }
        }
    }
    DhRecognition { is_dh: true, elimination, remainder: VertexSet::new() }
}

fn removable(g: &Graph, alive: &FixedBitSet, order: EliminationOrder) -> Option<EliminationStep> {
    let mut open: HashMap<Vertex, FixedBitSet> = HashMap::new();
    let mut closed: HashMap<Vertex, FixedBitSet> = HashMap::new();
    for v in alive.ones() {
        let mut r = g.row(v).clone();
        r.intersect_with(alive);
        let mut c = r.clone();
        c.insert(v);
        open.insert(v, r);
        closed.insert(v, c);
    }
    // members of each neighbourhood class, in increasing order
    let mut open_class: HashMap<&FixedBitSet, Vec<Vertex>> = HashMap::new();
    let mut closed_class: HashMap<&FixedBitSet, Vec<Vertex>> = HashMap::new();
    for v in alive.ones() {
        open_class.entry(&open[&v]).or_default().push(v);
        closed_class.entry(&closed[&v]).or_default().push(v);
    }
    let partner = |class: &Vec<Vertex>, v: Vertex| class.iter().copied().find(|&w| w != v);
    let twin = |v: Vertex| -> Option<Elimination> {
        if let Some(u) = partner(&closed_class[&closed[&v]], v) {
            return Some(Elimination::Twin { of: u, kind: TwinKind::Closed });
        }
        partner(&open_class[&open[&v]], v).map(|u| Elimination::Twin { of: u, kind: TwinKind::Open })
    };
    let low_degree = |v: Vertex| -> Option<Elimination> {
        let r = &open[&v];
        match r.count_ones(..) {
            0 => Some(Elimination::Isolated),
            1 => Some(Elimination::Pendant { at: r.minimum().expect("one neighbour") }),
            _ => None,
        }
    };
    let pick = |v: Vertex| -> Option<EliminationStep> {
        let via = match order {
            // an isolated vertex that pairs with another one is recorded as a twin
            EliminationOrder::LargestFirst => match low_degree(v) {
                Some(Elimination::Isolated) => twin(v).or(Some(Elimination::Isolated)),
                other => other.or_else(|| twin(v)),
            },
            EliminationOrder::SmallestFirst => twin(v).or_else(|| low_degree(v)),
        }?;
        Some(EliminationStep { vertex: v, via })
    };
    match order {
        EliminationOrder::LargestFirst => {
            let mut vs: Vec<Vertex> = alive.ones().collect();
            vs.reverse();
            vs.into_iter().find_map(pick)
        }
        EliminationOrder::SmallestFirst => alive.ones().find_map(pick),
    }
}

/// Decomposition tree of a connected distance-hereditary graph, obtained by
/// replaying the elimination backwards.
pub fn build_decomposition_tree(g: &Graph) -> Result<DecompTree, LdError> {
    build_decomposition_tree_with(g, EliminationOrder::default())
}

pub fn build_decomposition_tree_with(g: &Graph, order: EliminationOrder) -> Result<DecompTree, LdError> {
    if g.n() == 0 {
        return Err(LdError::TooSmall { n: 0, min: 1 });
    }
    if !g.is_connected() {
        return Err(LdError::NotInClass { class: GraphClass::Dh, reason: "graph is not connected".into() });
    }
    let rec = eliminate(g, order);
    if !rec.is_dh {
        return Err(not_dh(&rec));
    }
    let mut steps = rec.elimination.into_iter().rev();
    let first = steps.next().expect("n >= 1");
    let mut nodes = vec![Node::Leaf { vertex: first.vertex }];
    let mut leaf_at = vec![usize::MAX; g.n()];
    leaf_at[first.vertex] = 0;
    for step in steps {
        let (u, op) = match step.via {
            Elimination::Pendant { at } => (at, Op::Attach),
            Elimination::Twin { of, kind: TwinKind::Closed } => (of, Op::TrueTwin),
            Elimination::Twin { of, kind: TwinKind::Open } => (of, Op::FalseTwin),
            Elimination::Isolated => unreachable!("a connected graph has one isolated step, the last"),
        };
        let slot = leaf_at[u];
        let left = nodes.len();
        nodes.push(Node::Leaf { vertex: u });
        nodes.push(Node::Leaf { vertex: step.vertex });
        nodes[slot] = Node::Internal { op, left, right: left + 1 };
        leaf_at[u] = left;
        leaf_at[step.vertex] = left + 1;
    }
    let tree = DecompTree::from_parts(nodes, 0).expect("builder produces a valid arena");
    debug_assert_eq!(tree.reconstruct(), *g);
    Ok(tree)
}

fn not_dh(rec: &DhRecognition) -> LdError {
    LdError::NotInClass {
        class: GraphClass::Dh,
        reason: format!("no pendant vertex or twin among the remaining vertices {:?}", rec.remainder),
    }
}

/// Checks the class precondition of the partition theorem: distance-hereditary,
/// isolate-free and twin-free.
pub fn check_dh_preconditions(g: &Graph) -> Result<(), LdError> {
    let rec = is_distance_hereditary(g);
    if !rec.is_dh {
        return Err(not_dh(&rec));
    }
    if let Some(v) = g.isolated_vertices().first() {
        return Err(LdError::HasIsolated(v));
    }
    if let Some(p) = g.find_twin_pair() {
        return Err(LdError::HasTwins(p));
    }
    Ok(())
}
