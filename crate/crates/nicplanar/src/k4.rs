//! K4 listing with a step budget, following Chiba and Nishizeki's
//! degree-ordered neighborhood scheme, plus per-edge buckets.
//!
//! Vertices are processed in non-increasing degree order. For a vertex `v`
//! its remaining neighbors are marked; for each marked `u` the marked
//! neighbors of `u` are marked once more, and every edge among those closes a
//! K4. Afterwards `u` is dropped from the marked set and, once all of `v`'s
//! neighbors are handled, `v` is deleted from the graph. The total work is
//! `O(a(G)² · m)` for arboricity `a(G)`.
//!
//! *Essential steps* are vertex marks and edge marks; every adjacency entry
//! inspected while computing an induced neighborhood counts as an edge mark.
//! Unmarking and output are not counted. When the counter would exceed the
//! cap, listing stops with [`K4Outcome::Timeout`].

use crate::graph_core::Graph;

/// All K4 subgraphs of a graph with per-edge buckets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K4Catalog {
    /// Sorted vertex quadruples, in lexicographic order.
    pub k4s: Vec<[usize; 4]>,
    /// `buckets[e]` lists the catalog indices of K4s containing edge `e`
    /// (indexed like `Graph::edges`).
    pub buckets: Vec<Vec<usize>>,
    /// Essential steps consumed by the listing.
    pub steps: u64,
}

impl K4Catalog {
    /// Number of K4s.
    pub fn len(&self) -> usize {
        self.k4s.len()
    }

    /// Whether no K4 was found.
    pub fn is_empty(&self) -> bool {
        self.k4s.is_empty()
    }

    /// The six edges of a quadruple, normalized.
    pub fn edges_of(k: &[usize; 4]) -> [(usize, usize); 6] {
        [
            (k[0], k[1]),
            (k[0], k[2]),
            (k[0], k[3]),
            (k[1], k[2]),
            (k[1], k[3]),
            (k[2], k[3]),
        ]
    }
}

/// Outcome of [`list_k4`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum K4Outcome {
    /// Listing finished within the cap.
    Complete(K4Catalog),
    /// The cap was reached; `steps` were spent.
    Timeout {
        /// Steps consumed when the listing stopped.
        steps: u64,
    },
}

impl K4Outcome {
    /// The catalog, if complete.
    pub fn catalog(self) -> Option<K4Catalog> {
        match self {
            K4Outcome::Complete(c) => Some(c),
            K4Outcome::Timeout { .. } => None,
        }
    }
}

struct Budget {
    steps: u64,
    cap: u64,
}

impl Budget {
    #[inline]
    fn take(&mut self, k: u64) -> bool {
        self.steps += k;
        self.steps <= self.cap
    }
}

/// Lists all K4s of `g` using at most `step_cap` essential steps.
pub fn list_k4(g: &Graph, step_cap: u64) -> K4Outcome {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut mark1 = vec![false; n];
    let mut mark2 = vec![false; n];
    let mut budget = Budget {
        steps: 0,
        cap: step_cap,
    };
    let mut found: Vec<[usize; 4]> = Vec::new();
    for &v in &order {
        let u1: Vec<usize> = adj[v].clone();
        if !budget.take(u1.len() as u64) {
            return K4Outcome::Timeout {
                steps: budget.steps,
            };
        }
        for &u in &u1 {
            mark1[u] = true;
        }
        for &u in &u1 {
            // Induced neighborhood of u inside the marked set.
            if !budget.take(adj[u].len() as u64) {
                return K4Outcome::Timeout {
                    steps: budget.steps,
                };
            }
            let u2: Vec<usize> = adj[u].iter().copied().filter(|&w| mark1[w]).collect();
            if !budget.take(u2.len() as u64) {
                return K4Outcome::Timeout {
                    steps: budget.steps,
                };
            }
            for &w in &u2 {
                mark2[w] = true;
            }
            for &w in &u2 {
                if !budget.take(adj[w].len() as u64) {
                    return K4Outcome::Timeout {
                        steps: budget.steps,
                    };
                }
                for &x in &adj[w] {
                    if mark2[x] && w < x {
                        let mut k = [v, u, w, x];
                        k.sort_unstable();
                        found.push(k);
                    }
                }
            }
            for &w in &u2 {
                mark2[w] = false;
            }
            mark1[u] = false;
        }
        // Delete v from the graph.
        for &u in &u1 {
            if let Some(p) = adj[u].iter().position(|&w| w == v) {
                adj[u].swap_remove(p);
            }
        }
        adj[v].clear();
    }
    found.sort_unstable();
    found.dedup();
    let buckets = bucket_by_edge(&found, g);
    K4Outcome::Complete(K4Catalog {
        k4s: found,
        buckets,
        steps: budget.steps,
    })
}

/// Per-edge buckets: for every edge of `g`, the indices of the K4s in
/// `k4s` that contain it.
pub fn bucket_by_edge(k4s: &[[usize; 4]], g: &Graph) -> Vec<Vec<usize>> {
    let mut buckets = vec![Vec::new(); g.m()];
    for (i, k) in k4s.iter().enumerate() {
        for (a, b) in K4Catalog::edges_of(k) {
            let e = g
                .edge_index(a, b)
                .expect("catalog entries are cliques of the graph");
            buckets[e].push(i);
        }
    }
    buckets
}

/// The recognizer's default cap: `256 · n` essential steps.
pub fn default_step_cap(n: usize) -> u64 {
    256 * n as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::complete_graph;

    #[test]
    fn complete_graphs() {
        let c = list_k4(&complete_graph(4), 1000).catalog().unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.buckets.iter().all(|b| b.len() == 1));
        let c = list_k4(&complete_graph(5), 1000).catalog().unwrap();
        assert_eq!(c.len(), 5);
        assert!(c.buckets.iter().all(|b| b.len() == 3));
        let c = list_k4(&complete_graph(6), 10_000).catalog().unwrap();
        assert_eq!(c.len(), 15);
        assert!(c.buckets.iter().all(|b| b.len() == 6));
    }

    #[test]
    fn timeout_is_reported() {
        assert!(matches!(
            list_k4(&complete_graph(8), 10),
            K4Outcome::Timeout { .. }
        ));
    }
}
