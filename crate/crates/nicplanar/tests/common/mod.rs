//! Independent brute-force helpers shared by the integration tests. Nothing
//! here calls into the library's algorithms beyond building `Graph` values.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nicplanar::graph_core::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic RNG for a test.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All 4-subsets inducing K4, by exhaustive scan.
pub fn brute_k4(g: &Graph) -> BTreeSet<[usize; 4]> {
    let n = g.n();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| g.has_edge(q[i], q[j]))) {
                        out.insert(q);
                    }
                }
            }
        }
    }
    out
}

/// Connected after deleting the vertices in `removed`?
pub fn connected_without(g: &Graph, removed: &[usize]) -> bool {
    let n = g.n();
    let alive: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let Some(&start) = alive.first() else {
        return true;
    };
    let mut seen = vec![false; n];
    for &r in removed {
        seen[r] = true;
    }
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == alive.len()
}

/// 2-connectivity by deleting every single vertex.
pub fn brute_biconnected(g: &Graph) -> bool {
    g.n() >= 3 && connected_without(g, &[]) && (0..g.n()).all(|v| connected_without(g, &[v]))
}

/// 3-connectivity by deleting every vertex pair.
pub fn brute_triconnected(g: &Graph) -> bool {
    let n = g.n();
    n >= 4
        && brute_biconnected(g)
        && (0..n).all(|a| (a + 1..n).all(|b| connected_without(g, &[a, b])))
}

/// Uniform random simple graph with `n` vertices and `m` edges.
pub fn random_graph(r: &mut impl Rng, n: usize, m: usize) -> Graph {
    let mut all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    all.shuffle(r);
    all.truncate(m);
    Graph::new(n, &all).expect("distinct pairs form a simple graph")
}

/// Random stacked triangulation (maximal planar) on `n ≥ 3` vertices.
pub fn random_stacked_triangulation(r: &mut impl Rng, n: usize) -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let i = r.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    Graph::new(n, &edges).expect("stacking creates no duplicate edges")
}

/// `g` with edge `e` removed and the non-edge `(u, v)` added.
pub fn rewire(g: &Graph, e: usize, u: usize, v: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.remove(e);
    edges.push((u, v));
    Graph::new(g.n(), &edges).expect("rewired graph stays simple")
}

/// All single-edge rewirings of `g` (every edge to every non-edge).
pub fn all_rewirings(g: &Graph) -> Vec<Graph> {
    let n = g.n();
    let mut out = Vec::new();
    for e in 0..g.m() {
        for u in 0..n {
            for v in u + 1..n {
                if !g.has_edge(u, v) {
                    out.push(rewire(g, e, u, v));
                }
            }
        }
    }
    out
}
