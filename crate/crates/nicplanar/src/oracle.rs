//! Brute-force decision procedure for maximal and optimal NIC-planarity on
//! small graphs.
//!
//! In a maximal NIC-planar embedding every crossing sits inside a kite, so
//! an embedding is determined, up to its planar remainder, by the set of
//! K4s drawn as kites. The oracle therefore searches *kite sets*: sets of
//! K4s in which no edge lies in two members. A kite set is accepted when its
//! star graph (each member replaced by a star on a new vertex) is planar.
//!
//! **Limitation:** this decides whether a graph has a NIC-planar embedding
//! in which the selected K4s are kites. It is complete for maximal and
//! optimal NIC-planar graphs but does not decide NIC-planarity of arbitrary
//! graphs, whose crossings need not lie in kites.
//!
//! The K4 catalog is computed by scanning all 4-subsets, independently of
//! [`crate::k4`].

use crate::embedding::verify_nic;
use crate::error::OracleError;
use crate::graph_core::Graph;
use crate::k4::{bucket_by_edge, K4Catalog};
use crate::planarity::is_planar;
use crate::recognize::{build_star_graph, reinsert_kites, KiteSet};

/// Default vertex limit.
pub const DEFAULT_LIMIT: usize = 12;

/// Largest catalog the unpruned enumeration of all subsets accepts.
pub const MAX_UNPRUNED_CATALOG: usize = 24;

/// Search configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Refuse graphs with more vertices than this.
    pub limit: usize,
    /// Require an optimal kite set: `m − (3n − 6)` members covering every
    /// edge exactly once.
    pub optimal: bool,
    /// Cut branches that cannot lead to a valid set. Without pruning, every
    /// subset (or, for the optimal variant, every subset of the required
    /// size) is generated and filtered.
    pub pruned: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            limit: DEFAULT_LIMIT,
            optimal: false,
            pruned: true,
        }
    }
}

/// Search counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    /// Size of the K4 catalog.
    pub catalog: usize,
    /// Complete candidate sets submitted to the planarity test.
    pub candidates: u64,
    /// Branches cut by pruning.
    pub prunes: u64,
}

/// Outcome of the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// Whether at least one valid kite set exists.
    pub decision: bool,
    /// All valid kite sets, sorted.
    pub kite_sets: Vec<KiteSet>,
    /// Search counters.
    pub stats: OracleStats,
}

/// Lists every K4 of `g` by testing all 4-subsets of vertices.
pub fn brute_force_k4(g: &Graph) -> Vec<[usize; 4]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !(g.has_edge(a, c) && g.has_edge(b, c)) {
                    continue;
                }
                for d in c + 1..n {
                    if g.has_edge(a, d) && g.has_edge(b, d) && g.has_edge(c, d) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

struct Search<'a> {
    g: &'a Graph,
    catalog: Vec<[usize; 4]>,
    buckets: Vec<Vec<usize>>,
    /// Edge indices of every catalog member.
    member_edges: Vec<[usize; 6]>,
    optimal: bool,
    target: usize,
    stats: OracleStats,
    found: Vec<KiteSet>,
}

impl Search<'_> {
    fn accept(&mut self, chosen: &[usize]) {
        self.stats.candidates += 1;
        let mut kites: Vec<[usize; 4]> = chosen.iter().map(|&i| self.catalog[i]).collect();
        kites.sort_unstable();
        let set = KiteSet { kites };
        let (star, _) = build_star_graph(self.g, &set);
        if is_planar(&star) {
            self.found.push(set);
        }
    }

    fn edge_disjoint(&self, chosen: &[usize]) -> bool {
        let mut used = vec![false; self.g.m()];
        for &i in chosen {
            for &e in &self.member_edges[i] {
                if std::mem::replace(&mut used[e], true) {
                    return false;
                }
            }
        }
        true
    }

    fn covers_all(&self, chosen: &[usize]) -> bool {
        let mut cnt = vec![0u8; self.g.m()];
        for &i in chosen {
            for &e in &self.member_edges[i] {
                cnt[e] += 1;
            }
        }
        cnt.iter().all(|&c| c == 1)
    }

    /// Plain enumeration of all subsets (or all `target`-subsets).
    fn unpruned(&mut self, next: usize, chosen: &mut Vec<usize>) {
        if next == self.catalog.len() {
            let ok = if self.optimal {
                chosen.len() == self.target && self.covers_all(chosen)
            } else {
                self.edge_disjoint(chosen)
            };
            if ok {
                self.accept(chosen);
            }
            return;
        }
        if !(self.optimal && chosen.len() == self.target) {
            chosen.push(next);
            self.unpruned(next + 1, chosen);
            chosen.pop();
        }
        if !(self.optimal && chosen.len() + (self.catalog.len() - next - 1) < self.target) {
            self.unpruned(next + 1, chosen);
        }
    }

    /// Include/exclude recursion skipping members that share an edge with
    /// the current selection.
    fn pruned_maximal(&mut self, next: usize, chosen: &mut Vec<usize>, used: &mut Vec<bool>) {
        if next == self.catalog.len() {
            self.accept(chosen);
            return;
        }
        let edges = self.member_edges[next];
        if edges.iter().any(|&e| used[e]) {
            self.stats.prunes += 1;
        } else {
            for &e in &edges {
                used[e] = true;
            }
            chosen.push(next);
            self.pruned_maximal(next + 1, chosen, used);
            chosen.pop();
            for &e in &edges {
                used[e] = false;
            }
        }
        self.pruned_maximal(next + 1, chosen, used);
    }

    /// Exact cover: branch on the uncovered edge with the fewest usable
    /// K4s.
    fn pruned_optimal(&mut self, chosen: &mut Vec<usize>, used: &mut Vec<bool>) {
        let mut best: Option<(usize, usize)> = None;
        for (e, bucket) in self.buckets.iter().enumerate() {
            if used[e] {
                continue;
            }
            let usable = bucket
                .iter()
                .filter(|&&i| self.member_edges[i].iter().all(|&f| !used[f]))
                .count();
            if best.is_none_or(|(_, c)| usable < c) {
                best = Some((e, usable));
            }
        }
        let Some((e, usable)) = best else {
            if chosen.len() == self.target {
                self.accept(chosen);
            } else {
                self.stats.prunes += 1;
            }
            return;
        };
        if usable == 0 || chosen.len() >= self.target {
            self.stats.prunes += 1;
            return;
        }
        for i in self.buckets[e].clone() {
            let edges = self.member_edges[i];
            if edges.iter().any(|&f| used[f]) {
                continue;
            }
            for &f in &edges {
                used[f] = true;
            }
            chosen.push(i);
            self.pruned_optimal(chosen, used);
            chosen.pop();
            for &f in &edges {
                used[f] = false;
            }
        }
    }
}

/// Finds all valid kite sets of `g`.
///
/// In the maximal variant every edge-disjoint set of K4s is a candidate; in
/// the optimal variant only sets of exactly `m − (3n − 6)` K4s covering every
/// edge exactly once are. Candidates whose star graph is planar are
/// returned.
pub fn oracle_maximal_nic(g: &Graph, opts: OracleOptions) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > opts.limit {
        return Err(OracleError::LimitExceeded {
            n,
            limit: opts.limit,
        });
    }
    let catalog = brute_force_k4(g);
    if !opts.pruned && catalog.len() > MAX_UNPRUNED_CATALOG {
        return Err(OracleError::SearchTooLarge {
            catalog: catalog.len(),
            max: MAX_UNPRUNED_CATALOG,
        });
    }
    let buckets = bucket_by_edge(&catalog, g);
    let member_edges = catalog
        .iter()
        .map(|k| {
            K4Catalog::edges_of(k)
                .map(|(a, b)| g.edge_index(a, b).expect("catalog members are cliques"))
        })
        .collect();
    let planar_max = if n >= 3 {
        3 * n - 6
    } else {
        n.saturating_sub(1)
    };
    let stats = OracleStats {
        catalog: catalog.len(),
        ..OracleStats::default()
    };
    let mut s = Search {
        g,
        catalog,
        buckets,
        member_edges,
        optimal: opts.optimal,
        target: g.m().saturating_sub(planar_max),
        stats,
        found: Vec::new(),
    };
    let feasible = !opts.optimal || g.m() >= planar_max;
    if feasible {
        let mut chosen = Vec::new();
        let mut used = vec![false; g.m()];
        match (opts.pruned, opts.optimal) {
            (false, _) => s.unpruned(0, &mut chosen),
            (true, false) => s.pruned_maximal(0, &mut chosen, &mut used),
            (true, true) => s.pruned_optimal(&mut chosen, &mut used),
        }
    }
    let mut kite_sets = s.found;
    kite_sets.sort_by(|a, b| a.kites.cmp(&b.kites));
    Ok(OracleResult {
        decision: !kite_sets.is_empty(),
        kite_sets,
        stats: s.stats,
    })
}

/// Rebuilds the embedding of a kite set and checks it with [`verify_nic`].
pub fn kite_set_round_trips(g: &Graph, set: &KiteSet) -> bool {
    let (star, _) = build_star_graph(g, set);
    let Some(rot) = crate::planarity::test_planarity(&star).rotation() else {
        return false;
    };
    reinsert_kites(g, &rot, set)
        .map(|e| verify_nic(&e).pass)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::complete_graph;

    #[test]
    fn k4_has_two_kite_sets() {
        let r = oracle_maximal_nic(&complete_graph(4), OracleOptions::default()).unwrap();
        assert_eq!(r.kite_sets.len(), 2);
        assert!(r.kite_sets[0].kites.is_empty());
        assert_eq!(r.kite_sets[1].kites, vec![[0, 1, 2, 3]]);
    }

    #[test]
    fn k5_has_no_optimal_set() {
        for pruned in [true, false] {
            let r = oracle_maximal_nic(
                &complete_graph(5),
                OracleOptions {
                    optimal: true,
                    pruned,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(!r.decision);
        }
    }

    #[test]
    fn limit_is_enforced() {
        let err = oracle_maximal_nic(&complete_graph(13), OracleOptions::default()).unwrap_err();
        assert_eq!(err, OracleError::LimitExceeded { n: 13, limit: 12 });
    }
}
