//! Exhaustive ground truth for small graphs: the location-domination number
//! and the existence of an LD-partition.
//!
//! Both searches run over machine-word vertex masks, so graphs are limited to
//! [`MAX_ORACLE_CAP`] vertices regardless of configuration. Inputs above the
//! configured cap are refused, never truncated.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::OracleError;
use crate::graph::{Graph, VertexSet};
use crate::partition::LdPartition;

pub const DEFAULT_GAMMA_CAP: usize = 18;
pub const DEFAULT_PARTITION_CAP: usize = 20;
pub const MAX_ORACLE_CAP: usize = 63;

/// Environment variable overriding both default caps.
pub const CAP_ENV_VAR: &str = "LD_ORACLE_CAP";

/// Below this order the coloring search is not worth splitting across threads.
const PARALLEL_THRESHOLD: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCaps {
    pub gamma: usize,
    pub partition: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self { gamma: DEFAULT_GAMMA_CAP, partition: DEFAULT_PARTITION_CAP }
    }
}

impl OracleCaps {
    pub fn new(gamma: usize, partition: usize) -> Result<Self, OracleError> {
        for cap in [gamma, partition] {
            if cap > MAX_ORACLE_CAP {
                return Err(OracleError::CapTooLarge { cap, max: MAX_ORACLE_CAP });
            }
        }
        Ok(Self { gamma, partition })
    }

    /// Defaults, with both caps replaced by `LD_ORACLE_CAP` when it is set to
    /// a valid number.
    pub fn from_env() -> Result<Self, OracleError> {
        match std::env::var(CAP_ENV_VAR).ok().and_then(|s| s.trim().parse::<usize>().ok()) {
            Some(cap) => Self::new(cap, cap),
            None => Ok(Self::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OracleResult {
    pub gamma_ld: Option<usize>,
    pub witness_set: Option<VertexSet>,
    pub partition: Option<LdPartition>,
    /// The whole search space was covered (for `gamma_ld`: every smaller
    /// subset was rejected; for partitions: no coloring works).
    pub exhausted: bool,
}

/// Adjacency as one bit mask per vertex.
struct MaskGraph {
    n: usize,
    adj: Vec<u64>,
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        let adj = g
            .vertices()
            .map(|v| g.neighbors(v).fold(0u64, |acc, w| acc | 1 << w))
            .collect();
        Self { n: g.n(), adj }
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn is_ld_set(&self, d: u64) -> bool {
        let mut traces = [0u64; 64];
        let mut k = 0;
        let mut outside = self.full() & !d;
        while outside != 0 {
            let v = outside.trailing_zeros() as usize;
            outside &= outside - 1;
            let t = self.adj[v] & d;
            if t == 0 {
                return false;
            }
            traces[k] = t;
            k += 1;
        }
        let traces = &mut traces[..k];
        traces.sort_unstable();
        traces.windows(2).all(|w| w[0] != w[1])
    }
}

fn mask_to_set(mask: u64) -> VertexSet {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn ensure_within(g: &Graph, cap: usize) -> Result<(), OracleError> {
    let cap = cap.min(MAX_ORACLE_CAP);
    if g.n() > cap {
        return Err(OracleError::CapExceeded { n: g.n(), cap });
    }
    Ok(())
}

/// Next integer with the same number of set bits (Gosper's hack).
fn next_combination(x: u64) -> Option<u64> {
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

/// Exact `γ_LD(G)` with one minimum witness.
///
/// Subsets are enumerated by increasing size and, within a size, by
/// increasing mask value; the first LD-set found is the witness.
pub fn gamma_ld(g: &Graph, cap: usize) -> Result<OracleResult, OracleError> {
    ensure_within(g, cap)?;
    let mg = MaskGraph::new(g);
    let n = g.n();
    let limit = 1u128 << n;
    for k in 0..=n {
        let mut x: u64 = if k == 0 { 0 } else { mg.full() >> (n - k) };
        loop {
            if mg.is_ld_set(x) {
                return Ok(OracleResult {
                    gamma_ld: Some(k),
                    witness_set: Some(mask_to_set(x)),
                    partition: None,
                    exhausted: true,
                });
            }
            if k == 0 {
                break;
            }
            match next_combination(x) {
                Some(nx) if (nx as u128) < limit => x = nx,
                _ => break,
            }
        }
    }
    unreachable!("V(G) is always an LD-set")
}

/// Searches all 2-colorings for an LD-partition.
///
/// Vertex 0 is pinned to the first side. Colorings are read as strings
/// `c_0 c_1 .. c_{n-1}` (0 = first side, 1 = second side) and scanned in
/// lexicographic order, so the partition returned is the one with the
/// smallest such string; the result does not depend on thread count.
pub fn ld_partition_exists(g: &Graph, cap: usize) -> Result<OracleResult, OracleError> {
    ensure_within(g, cap)?;
    let n = g.n();
    if n == 0 {
        return Ok(OracleResult {
            partition: Some(LdPartition::default()),
            ..Default::default()
        });
    }
    let mg = MaskGraph::new(g);
    let full = mg.full();
    let free = n - 1;
    // bit j of the counter is the color of vertex n-1-j
    let to_second = |m: u64| -> u64 {
        if free == 0 {
            0
        } else {
            (m.reverse_bits() >> (64 - free)) << 1
        }
    };
    let works = |m: &u64| {
        let d2 = to_second(*m);
        let d1 = full & !d2;
        mg.is_ld_set(d1) && mg.is_ld_set(d2)
    };
    let count = 1u64 << free;
    let found = if n >= PARALLEL_THRESHOLD {
        (0..count).into_par_iter().find_first(works)
    } else {
        (0..count).find(works)
    };
    Ok(match found {
        Some(m) => {
            let d2 = to_second(m);
            OracleResult {
                partition: Some(LdPartition::new(mask_to_set(full & !d2), mask_to_set(d2))),
                ..Default::default()
            }
        }
        None => OracleResult { exhausted: true, ..Default::default() },
    })
}
