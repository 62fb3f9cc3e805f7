//! Reference implementations written straight from the definitions, sharing no
//! code with the library beyond reading a graph's edge list. Slow on purpose.

#![allow(dead_code)]

use std::collections::VecDeque;

use ldpart::Graph;

/// Adjacency matrix.
pub struct Adj {
    pub n: usize,
    pub m: Vec<Vec<bool>>,
}

impl Adj {
    pub fn of(g: &Graph) -> Self {
        let n = g.n();
        let mut m = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            m[u][v] = true;
            m[v][u] = true;
        }
        Adj { n, m }
    }

    pub fn nbrs(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&w| self.m[v][w]).collect()
    }

    /// `N(v) ∩ D` as a sorted list.
    pub fn trace(&self, v: usize, d: &[bool]) -> Vec<usize> {
        (0..self.n).filter(|&w| d[w] && self.m[v][w]).collect()
    }
}

pub fn mask(n: usize, d: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut out = vec![false; n];
    for v in d {
        out[v] = true;
    }
    out
}

pub fn naive_dominating(a: &Adj, d: &[bool]) -> bool {
    (0..a.n).all(|v| d[v] || !a.trace(v, d).is_empty())
}

pub fn naive_locating(a: &Adj, d: &[bool]) -> bool {
    let out: Vec<usize> = (0..a.n).filter(|&v| !d[v]).collect();
    for (i, &u) in out.iter().enumerate() {
        for &w in &out[i + 1..] {
            if a.trace(u, d) == a.trace(w, d) {
                return false;
            }
        }
    }
    true
}

pub fn naive_ld(a: &Adj, d: &[bool]) -> bool {
    naive_dominating(a, d) && naive_locating(a, d)
}

fn subset(n: usize, bits: u64) -> Vec<bool> {
    (0..n).map(|v| bits >> v & 1 == 1).collect()
}

/// Smallest LD-set size by trying every subset.
pub fn naive_gamma(g: &Graph) -> usize {
    let a = Adj::of(g);
    (0..1u64 << a.n)
        .filter(|&b| naive_ld(&a, &subset(a.n, b)))
        .map(|b| b.count_ones() as usize)
        .min()
        .expect("V(G) is always an LD-set")
}

/// Whether some 2-colouring makes both colour classes LD-sets.
pub fn naive_partition_exists(g: &Graph) -> bool {
    let a = Adj::of(g);
    (0..1u64 << a.n).any(|b| {
        let d1 = subset(a.n, b);
        let d2: Vec<bool> = d1.iter().map(|x| !x).collect();
        naive_ld(&a, &d1) && naive_ld(&a, &d2)
    })
}

/// BFS distances inside the vertex subset `keep`.
fn distances_within(a: &Adj, keep: &[bool], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; a.n];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for w in 0..a.n {
            if keep[w] && a.m[u][w] && dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// Distance-hereditary by definition: in every connected induced subgraph,
/// distances equal those in the whole graph.
pub fn brute_is_dh(g: &Graph) -> bool {
    let a = Adj::of(g);
    let all = vec![true; a.n];
    let full: Vec<Vec<Option<usize>>> = (0..a.n).map(|s| distances_within(&a, &all, s)).collect();
    for bits in 1..1u64 << a.n {
        let keep = subset(a.n, bits);
        let verts: Vec<usize> = (0..a.n).filter(|&v| keep[v]).collect();
        let d0 = distances_within(&a, &keep, verts[0]);
        if verts.iter().any(|&v| d0[v].is_none()) {
            continue;
        }
        for &u in &verts {
            let du = distances_within(&a, &keep, u);
            if verts.iter().any(|&v| du[v] != full[u][v]) {
                return false;
            }
        }
    }
    true
}

fn is_clique(a: &Adj, s: &[usize]) -> bool {
    s.iter().all(|&u| s.iter().all(|&v| u == v || a.m[u][v]))
}

fn is_independent(a: &Adj, s: &[usize]) -> bool {
    s.iter().all(|&u| s.iter().all(|&v| !a.m[u][v]))
}

fn two_colourings(n: usize) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    (0..1u64 << n).map(move |b| {
        let x = (0..n).filter(|&v| b >> v & 1 == 1).collect();
        let y = (0..n).filter(|&v| b >> v & 1 == 0).collect();
        (x, y)
    })
}

pub fn brute_is_split(g: &Graph) -> bool {
    let a = Adj::of(g);
    two_colourings(a.n).any(|(x, y)| is_clique(&a, &x) && is_independent(&a, &y))
}

pub fn brute_is_cobipartite(g: &Graph) -> bool {
    let a = Adj::of(g);
    two_colourings(a.n).any(|(x, y)| is_clique(&a, &x) && is_clique(&a, &y))
}

pub fn naive_twin_free(g: &Graph) -> bool {
    let a = Adj::of(g);
    for u in 0..a.n {
        for v in u + 1..a.n {
            let open = (0..a.n).all(|w| a.m[u][w] == a.m[v][w]);
            let closed = (0..a.n).all(|w| w == u || w == v || a.m[u][w] == a.m[v][w]) && a.m[u][v];
            if open || closed {
                return false;
            }
        }
    }
    true
}

/// Random graph on `n` vertices with each edge present with probability `p`.
pub fn gnp(n: usize, p: f64, rng: &mut ldpart::generators::GenRng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Graphs of the bundled atlas: every graph on 1 to 7 vertices up to isomorphism.
pub fn atlas() -> Vec<Graph> {
    let text = include_str!("../data/atlas_upto7.g6");
    ldpart::format::parse_graph6_stream(text).unwrap()
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let x = rest.remove(i);
        for mut p in permutations(rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Maximal outerplanar by definition, for small graphs: `2n - 3` edges and a
/// Hamiltonian cycle whose remaining edges are pairwise non-crossing chords.
pub fn brute_is_mop(g: &Graph) -> bool {
    let a = Adj::of(g);
    let n = a.n;
    if n < 3 || g.m() != 2 * n - 3 {
        return false;
    }
    // fix vertex 0 first; every cyclic order is reached
    for rest in permutations((1..n).collect()) {
        let mut order = vec![0];
        order.extend(rest);
        if (0..n).any(|i| !a.m[order[i]][order[(i + 1) % n]]) {
            continue;
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let chords: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
            .filter(|&(i, j)| j - i != 1 && !(i == 0 && j == n - 1))
            .collect();
        let crossing = chords.iter().any(|&(a1, b1)| {
            chords.iter().any(|&(a2, b2)| a1 < a2 && a2 < b1 && b1 < b2)
        });
        if !crossing {
            return true;
        }
    }
    false
}
