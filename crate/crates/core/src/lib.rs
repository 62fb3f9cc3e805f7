//! Locating-dominating partitions.
//!
//! A set `D` of vertices is locating-dominating (LD) when every vertex outside
//! `D` has a neighbour in `D` and no two outside vertices see the same part of
//! `D`. This crate decides and constructs partitions of `V(G)` into two
//! LD-sets for distance-hereditary graphs, maximal outerplanar graphs, split
//! graphs and co-bipartite graphs, and ships an exhaustive oracle for small
//! graphs of any kind.

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod check;
pub mod dh;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod mop;
pub mod oracle;
pub mod partition;
pub mod splitco;

pub use check::{check_dominating, check_ld_partition, check_ld_set, check_locating, is_ld_partition, CheckReport};
pub use error::{GraphError, InternalAssertionFailure, LdError, OracleError};
pub use graph::{Graph, TwinKind, TwinPair, Vertex, VertexMap, VertexSet};
pub use partition::{LdPartition, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Dh,
    Mop,
    Split,
    Cobipartite,
}

impl GraphClass {
    pub const ALL: [GraphClass; 4] = [GraphClass::Dh, GraphClass::Mop, GraphClass::Split, GraphClass::Cobipartite];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Dh => "dh",
            GraphClass::Mop => "mop",
            GraphClass::Split => "split",
            GraphClass::Cobipartite => "cobipartite",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class `{s}` (expected dh, mop, split or cobipartite)"))
    }
}

/// Whether `g` belongs to `class`, ignoring the extra conditions of the
/// partition constructors.
pub fn is_member(g: &Graph, class: GraphClass) -> bool {
    match class {
        GraphClass::Dh => dh::is_distance_hereditary(g).is_dh,
        GraphClass::Mop => mop::recognize_mop(g).is_ok(),
        GraphClass::Split => splitco::split_partition(g).is_ok(),
        GraphClass::Cobipartite => splitco::cobipartite_partition(g).is_ok(),
    }
}

/// Checks everything the constructor for `class` requires of its input.
pub fn check_preconditions(g: &Graph, class: GraphClass) -> Result<(), LdError> {
    match class {
        GraphClass::Dh => dh::check_dh_preconditions(g),
        GraphClass::Mop => {
            mop::recognize_mop(g)?;
            if g.n() < 4 {
                return Err(LdError::TooSmall { n: g.n(), min: 4 });
            }
            Ok(())
        }
        GraphClass::Split | GraphClass::Cobipartite => {
            if class == GraphClass::Split {
                splitco::split_partition(g)?;
            } else {
                splitco::cobipartite_partition(g)?;
            }
            if g.n() == 0 {
                return Err(LdError::TooSmall { n: 0, min: 1 });
            }
            if let Some(v) = g.isolated_vertices().first() {
                return Err(LdError::HasIsolated(v));
            }
            match g.find_twin_pair() {
                Some(p) => Err(LdError::HasTwins(p)),
                None => Ok(()),
            }
        }
    }
}

/// LD-partition by the constructor for `class`. Every returned partition has
/// passed [`check_ld_partition`].
pub fn ld_partition(g: &Graph, class: GraphClass) -> Result<LdPartition, LdError> {
    match class {
        GraphClass::Dh => dh::ld_partition_dh(g),
        GraphClass::Mop => mop::ld_partition_mop(g),
        GraphClass::Split => splitco::ld_partition_split(g),
        GraphClass::Cobipartite => splitco::ld_partition_cobipartite(g),
    }
}
