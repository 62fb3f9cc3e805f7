//! Seeded instance generators and the exhaustive mop enumeration.
//!
//! Randomness comes from SplitMix64 (Steele, Lea and Flood; reference code at
//! <https://prng.di.unimi.it/splitmix64.c>), seeded with the 64-bit seed as its
//! initial state. Every derived draw is fixed here so other implementations
//! can reproduce the same instances:
//!
//! * `below(n)`: `(x * n) >> 64` on the next output `x`, as 128-bit integers;
//! * `unit()`: the top 53 bits of the next output, divided by 2^53;
//! * `chance(p)`: `unit() < p`;
//! * `shuffle`: Fisher-Yates from the last position down, swapping `i` with
//!   `below(i + 1)`.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::GraphClass;

/// Bound on rejection and repair rounds for constrained generators.
pub const RETRY_CAP: usize = 1000;

/// Smallest order for which each class has a twin-free, isolate-free member.
pub const TWIN_FREE_MIN_ORDER: usize = 4;

pub const ENUMERATE_MOPS_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{class} instances need n >= {min}, got {n}")]
    TooSmall { class: GraphClass, n: usize, min: usize },
    #[error("density {0} is outside [0, 1]")]
    BadDensity(String),
    #[error("no {class} instance with n={n} met the constraints after {attempts} attempts")]
    Unsatisfiable { class: GraphClass, n: usize, attempts: usize },
    #[error("mop enumeration supports 3 <= n <= {max}, got {n}")]
    EnumerationRange { n: usize, max: usize },
}

pub struct GenRng(SplitMix64);

impl GenRng {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish draw from `0..n`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i + 1);
            xs.swap(i, j);
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<Vertex> {
        let mut p: Vec<Vertex> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }

    /// Index drawn with probability proportional to `weights`.
    fn weighted(&mut self, weights: &[u32]) -> usize {
        let total: u32 = weights.iter().sum();
        let mut r = self.below(total as usize) as u32;
        for (i, &w) in weights.iter().enumerate() {
            if r < w {
                return i;
            }
            r -= w;
        }
        unreachable!("r < total")
    }
}

/// Relative frequencies of the one-vertex extensions used by [`gen_dh`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DhWeights {
    pub true_twin: u32,
    pub false_twin: u32,
    pub pendant: u32,
}

impl Default for DhWeights {
    fn default() -> Self {
        Self { true_twin: 2, false_twin: 2, pendant: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub class: GraphClass,
    pub n: usize,
    pub seed: u64,
    /// Cross-edge density for split and co-bipartite graphs.
    pub p: f64,
    pub twin_free: bool,
    #[serde(default)]
    pub dh_weights: DhWeights,
}

impl GenSpec {
    pub fn new(class: GraphClass, n: usize, seed: u64) -> Self {
        Self { class, n, seed, p: 0.5, twin_free: true, dh_weights: DhWeights::default() }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_twins(mut self) -> Self {
        self.twin_free = false;
        self
    }
}

pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    match spec.class {
        GraphClass::Dh => gen_dh(spec),
        GraphClass::Mop => gen_mop(spec),
        GraphClass::Split => gen_split(spec),
        GraphClass::Cobipartite => gen_cobipartite(spec),
    }
}

fn graph_from_lists(adj: &[Vec<Vertex>]) -> Graph {
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edges(adj.len(), edges).expect("generator builds simple graphs")
}

/// Connected distance-hereditary graph grown one vertex at a time from `K1`.
fn random_dh(rng: &mut GenRng, n: usize, w: DhWeights) -> Graph {
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n.max(1)];
    for new in 1..n {
        let v = rng.below(new);
        // a false twin of the only vertex would disconnect the graph
        let weights = if new == 1 { [w.true_twin, 0, w.pendant.max(1)] } else { [w.true_twin, w.false_twin, w.pendant] };
        let weights = if weights.iter().sum::<u32>() == 0 { [0, 0, 1] } else { weights };
        let mut ns = match rng.weighted(&weights) {
            0 => {
                let mut ns = adj[v].clone();
                ns.push(v);
                ns
            }
            1 => adj[v].clone(),
            _ => vec![v],
        };
        ns.sort_unstable();
        for &u in &ns {
            adj[u].push(new);
        }
        adj[new] = ns;
    }
    adj.truncate(n);
    graph_from_lists(&adj)
}

/// Removes one vertex of a twin pair and hangs a new pendant on the other
/// until no twins remain. Both steps keep the graph connected and
/// distance-hereditary; `None` if the repair budget runs out.
fn repair_twins(rng: &mut GenRng, mut g: Graph, budget: usize) -> Option<Graph> {
    for _ in 0..budget {
        let Some(pair) = g.find_twin_pair() else {
            return Some(g);
        };
        let (keep, drop) = if rng.chance(0.5) { (pair.u, pair.v) } else { (pair.v, pair.u) };
        let (h, map) = g.without(&[drop]);
        let anchor = map.to_new(keep).expect("kept vertex survives");
        let mut edges = h.edges();
        edges.push((anchor, h.n()));
        g = Graph::from_edges(h.n() + 1, edges).expect("pendant edge is new");
    }
    None
}

/// Random connected distance-hereditary graph. With `twin_free`, the
/// result is also twin-free (hence isolate-free for `n >= 2`).
pub fn gen_dh(spec: &GenSpec) -> Result<Graph, GenError> {
    let n = spec.n;
    let min = if spec.twin_free { TWIN_FREE_MIN_ORDER } else { 1 };
    if n < min {
        return Err(GenError::TooSmall { class: GraphClass::Dh, n, min });
    }
    let mut rng = GenRng::new(spec.seed);
    if !spec.twin_free {
        let g = random_dh(&mut rng, n, spec.dh_weights);
        return Ok(g.permute(&rng.permutation(n)));
    }
    let mut attempts = 0;
    while attempts < RETRY_CAP {
        attempts += 1;
        let g = random_dh(&mut rng, n, spec.dh_weights);
        if let Some(g) = repair_twins(&mut rng, g, 4 * n) {
            return Ok(g.permute(&rng.permutation(n)));
        }
    }
    Err(GenError::Unsatisfiable { class: GraphClass::Dh, n, attempts })
}

/// Triangles of the polygon triangulation encoded by a full binary tree in
/// preorder (`true` = internal node). The root spans the base edge
/// `(0, n-1)`; a subtree with `k` leaves spans `k` consecutive polygon edges.
fn triangles_from_preorder(tokens: &[bool]) -> Vec<[Vertex; 3]> {
    enum Frame {
        Left(Vertex),
        Right(Vertex, Vertex),
    }
    let mut triangles = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();
    let mut start = 0;
    for &internal in tokens {
        if internal {
            stack.push(Frame::Left(start));
            continue;
        }
        // a leaf: one polygon edge; close every finished subtree above it
        let end = start + 1;
        loop {
            match stack.pop() {
                Some(Frame::Left(i)) => {
                    stack.push(Frame::Right(i, end));
                    start = end;
                    break;
                }
                Some(Frame::Right(i, k)) => {
                    triangles.push([i, k, end]);
                }
                None => {
                    start = end;
                    break;
                }
            }
        }
    }
    triangles
}

fn mop_from_triangles(n: usize, triangles: &[[Vertex; 3]]) -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).map(|(a, b)| (a.min(b), a.max(b))).collect();
    for t in triangles {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, edges).expect("triangulation is simple")
}

/// Uniformly random triangulation of the convex polygon `0, 1, .., n-1`.
///
/// A uniform full binary tree with `n-2` internal nodes comes from the cycle
/// lemma: shuffle `n-2` internal and `n-1` leaf symbols, then rotate so the
/// sequence starts right after the first position where the running sum
/// (`+1` internal, `-1` leaf) reaches its minimum.
pub fn gen_mop(spec: &GenSpec) -> Result<Graph, GenError> {
    let n = spec.n;
    if n < 3 {
        return Err(GenError::TooSmall { class: GraphClass::Mop, n, min: 3 });
    }
    let mut rng = GenRng::new(spec.seed);
    let mut word: Vec<bool> = std::iter::repeat(true).take(n - 2).chain(std::iter::repeat(false).take(n - 1)).collect();
    rng.shuffle(&mut word);
    let mut sum = 0i64;
    let mut min = i64::MAX;
    let mut cut = 0;
    for (i, &b) in word.iter().enumerate() {
        sum += if b { 1 } else { -1 };
        if sum < min {
            min = sum;
            cut = i + 1;
        }
    }
    let len = word.len();
    word.rotate_left(cut % len);
    Ok(mop_from_triangles(n, &triangles_from_preorder(&word)))
}

/// Every triangulation of the labelled convex `n`-gon, each exactly once.
/// There are `Catalan(n-2)` of them.
pub fn enumerate_mops(n: usize) -> Result<Vec<Graph>, GenError> {
    if !(3..=ENUMERATE_MOPS_MAX).contains(&n) {
        return Err(GenError::EnumerationRange { n, max: ENUMERATE_MOPS_MAX });
    }
    // all[i][j]: triangulations of the chain i..=j closed by the edge (i, j)
    let mut all: Vec<Vec<Vec<Vec<[Vertex; 3]>>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n - 1 {
        all[i][i + 1] = vec![Vec::new()];
    }
    for len in 2..n {
        for i in 0..n - len {
            let j = i + len;
            let mut out = Vec::new();
            for k in i + 1..j {
                for left in &all[i][k] {
                    for right in &all[k][j] {
                        let mut t = left.clone();
                        t.extend_from_slice(right);
                        t.push([i, k, j]);
                        out.push(t);
                    }
                }
            }
            all[i][j] = out;
        }
    }
    Ok(all[0][n - 1].iter().map(|t| mop_from_triangles(n, t)).collect())
}

fn check_density(p: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenError::BadDensity(p.to_string()))
    }
}

/// Two-sided generator shared by split and co-bipartite graphs: side `X`
/// is a clique, side `Y` a clique or an independent set, cross edges drawn
/// with probability `p`. Offending vertices have their cross edges redrawn.
fn gen_two_sided(spec: &GenSpec, class: GraphClass, y_clique: bool) -> Result<Graph, GenError> {
    let n = spec.n;
    check_density(spec.p)?;
    let min = if spec.twin_free { TWIN_FREE_MIN_ORDER } else { 2 };
    if n < min {
        return Err(GenError::TooSmall { class, n, min });
    }
    let mut rng = GenRng::new(spec.seed);
    let restarts = 10;
    let mut attempts = 0;
    for _ in 0..restarts {
        let k = if n >= 4 { 2 + rng.below(n - 3) } else { 1 };
        let mut cross: Vec<Vec<bool>> = (0..k).map(|_| (0..n - k).map(|_| rng.chance(spec.p)).collect()).collect();
        let build = |cross: &Vec<Vec<bool>>| {
            let mut edges = Vec::new();
            for u in 0..k {
                edges.extend((u + 1..k).map(|v| (u, v)));
                edges.extend((0..n - k).filter(|&j| cross[u][j]).map(|j| (u, k + j)));
            }
            if y_clique {
                for u in k..n {
                    edges.extend((u + 1..n).map(|v| (u, v)));
                }
            }
            Graph::from_edges(n, edges).expect("simple")
        };
        for _ in 0..RETRY_CAP / restarts {
            attempts += 1;
            let g = build(&cross);
            let bad = if let Some(v) = g.isolated_vertices().first() {
                Some(v)
            } else if spec.twin_free {
                g.find_twin_pair().map(|p| if rng.chance(0.5) { p.u } else { p.v })
            } else {
                None
            };
            let Some(v) = bad else {
                return Ok(g.permute(&rng.permutation(n)));
            };
            if v < k {
                for j in 0..n - k {
                    cross[v][j] = rng.chance(spec.p);
                }
            } else {
                for row in cross.iter_mut() {
                    row[v - k] = rng.chance(spec.p);
                }
            }
        }
    }
    Err(GenError::Unsatisfiable { class, n, attempts })
}

pub fn gen_split(spec: &GenSpec) -> Result<Graph, GenError> {
    gen_two_sided(spec, GraphClass::Split, false)
}

pub fn gen_cobipartite(spec: &GenSpec) -> Result<Graph, GenError> {
    gen_two_sided(spec, GraphClass::Cobipartite, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dh::is_distance_hereditary;

    #[test]
    fn splitmix_reference_stream() {
        // first outputs of splitmix64.c seeded with 0
        let mut r = GenRng::new(0);
        assert_eq!(r.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(r.next_u64(), 0x6e789e6aa1b965f4);
        assert_eq!(r.next_u64(), 0x06c45d188009454f);
    }

    #[test]
    fn rng_helpers() {
        let mut r = GenRng::new(7);
        for n in 1..50 {
            assert!(r.below(n) < n);
        }
        let u = r.unit();
        assert!((0.0..1.0).contains(&u));
        let mut p = r.permutation(20);
        p.sort_unstable();
        assert_eq!(p, (0..20).collect::<Vec<_>>());
        assert!(!r.chance(0.0));
        assert!(r.chance(1.0));
    }

    #[test]
    fn dh_examples() {
        for seed in 0..20 {
            let g = gen_dh(&GenSpec::new(GraphClass::Dh, 4, seed)).unwrap();
            // the only twin-free connected DH graph on 4 vertices
            assert_eq!(g.m(), 3);
            assert_eq!(g.degrees().iter().filter(|&&d| d == 1).count(), 2);
            assert!(g.is_connected());
        }
        for seed in 0..30 {
            let spec = GenSpec::new(GraphClass::Dh, 5 + seed as usize, seed);
            let g = gen_dh(&spec).unwrap();
            assert!(is_distance_hereditary(&g).is_dh);
            assert!(g.is_twin_free() && g.is_isolate_free() && g.is_connected());
            assert_eq!(g, gen_dh(&spec).unwrap());
            let g = gen_dh(&spec.with_twins()).unwrap();
            assert!(is_distance_hereditary(&g).is_dh && g.is_connected());
        }
        assert!(gen_dh(&GenSpec::new(GraphClass::Dh, 3, 0)).is_err());
    }

    #[test]
    fn mop_counts_and_shape() {
        let counts: Vec<usize> = (3..=10).map(|n| enumerate_mops(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132, 429, 1430]);
        let mut seen = std::collections::HashSet::new();
        for g in enumerate_mops(8).unwrap() {
            assert_eq!(g.m(), 2 * 8 - 3);
            assert!(seen.insert(g.edges()));
        }
        for seed in 0..20 {
            let g = gen_mop(&GenSpec::new(GraphClass::Mop, 10, seed)).unwrap();
            assert_eq!(g.m(), 17);
            assert!((0..10).all(|i| g.has_edge(i, (i + 1) % 10)));
        }
        assert!(enumerate_mops(13).is_err());
        assert!(gen_mop(&GenSpec::new(GraphClass::Mop, 2, 0)).is_err());
    }

    #[test]
    fn random_mops_cover_all_small_triangulations() {
        let all: std::collections::HashSet<_> = enumerate_mops(6).unwrap().into_iter().map(|g| g.edges()).collect();
        let hit: std::collections::HashSet<_> =
            (0..400).map(|s| gen_mop(&GenSpec::new(GraphClass::Mop, 6, s)).unwrap().edges()).collect();
        assert_eq!(hit, all);
    }

    #[test]
    fn two_sided_generators() {
        for seed in 0..30 {
            for class in [GraphClass::Split, GraphClass::Cobipartite] {
                let spec = GenSpec::new(class, 4 + seed as usize, seed);
                let g = generate(&spec).unwrap();
                assert!(g.is_twin_free() && g.is_isolate_free(), "{class} {g:?}");
                assert_eq!(g, generate(&spec).unwrap());
            }
        }
        assert!(gen_split(&GenSpec::new(GraphClass::Split, 5, 0).with_p(1.5)).is_err());
        assert!(matches!(
            gen_split(&GenSpec::new(GraphClass::Split, 30, 0).with_p(0.0)),
            Err(GenError::Unsatisfiable { .. })
        ));
    }
}
