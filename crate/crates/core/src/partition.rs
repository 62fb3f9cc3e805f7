use serde::{Deserialize, Serialize};

use crate::graph::{Vertex, VertexMap, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// An ordered pair of vertex sets claimed to partition a graph into two
/// locating-dominating sets. Use [`crate::check::check_ld_partition`] to
/// certify the claim.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LdPartition {
    pub d1: VertexSet,
    pub d2: VertexSet,
}

impl LdPartition {
    pub fn new(d1: VertexSet, d2: VertexSet) -> Self {
        Self { d1, d2 }
    }

    pub fn side(&self, side: Side) -> &VertexSet {
        match side {
            Side::First => &self.d1,
            Side::Second => &self.d2,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut VertexSet {
        match side {
            Side::First => &mut self.d1,
            Side::Second => &mut self.d2,
        }
    }

    pub fn side_of(&self, v: Vertex) -> Option<Side> {
        if self.d1.contains(v) {
            Some(Side::First)
        } else if self.d2.contains(v) {
            Some(Side::Second)
        } else {
            None
        }
    }

    pub fn swapped(self) -> Self {
        Self { d1: self.d2, d2: self.d1 }
    }

    /// Swap the sides if needed so that `v` lies in `side`.
    pub fn oriented(self, v: Vertex, side: Side) -> Self {
        if self.side_of(v) == Some(side.other()) {
            self.swapped()
        } else {
            self
        }
    }

    pub fn add(&mut self, side: Side, v: Vertex) {
        self.side_mut(side).insert(v);
    }

    pub fn min_side_len(&self) -> usize {
        self.d1.len().min(self.d2.len())
    }

    pub fn len(&self) -> usize {
        self.d1.len() + self.d2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d1.is_empty() && self.d2.is_empty()
    }

    /// Translate a partition of an induced subgraph back to original ids.
    pub fn lift(&self, map: &VertexMap) -> Self {
        Self { d1: map.lift(&self.d1), d2: map.lift(&self.d2) }
    }

    /// Side-wise union, used to combine partitions of disjoint components.
    pub fn merge(&mut self, other: &LdPartition) {
        self.d1 = self.d1.union(&other.d1);
        self.d2 = self.d2.union(&other.d2);
    }
}
