//! Recognition of optimal NIC-planar graphs in near-linear time.
//!
//! The pipeline: check the exact edge count `5m = 18(n − 2)`; list all K4s
//! within a `256 · n` step budget (a timeout shows the arboricity is too
//! large); select every K4 that is the only K4 on some edge; require that
//! every edge lies in exactly one selected K4; replace each selected K4 by a
//! star around a new vertex; test the result for planarity; and finally turn
//! each star center back into a crossing whose four kite edges hug it.

use std::fmt;

use crate::embedding::{Crossing, NicEmbedding};
use crate::error::EmbeddingError;
use crate::graph_core::Graph;
use crate::k4::{list_k4, K4Catalog, K4Outcome};
use crate::planarity::{test_planarity, Rotation};

/// Why a graph was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    /// `5m ≠ 18(n − 2)`.
    EdgeCountMismatch,
    /// Fewer than five vertices, or not biconnected.
    StructurallyInvalid,
    /// K4 listing exceeded its step budget.
    ArboricityTimeout,
    /// Some edge is not covered by exactly one selected K4.
    KiteCoverViolation,
    /// The star graph is not planar.
    NonplanarStarGraph,
}

impl RejectReason {
    /// Stable reason code.
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::EdgeCountMismatch => "EdgeCountMismatch",
            RejectReason::StructurallyInvalid => "StructurallyInvalid",
            RejectReason::ArboricityTimeout => "ArboricityTimeout",
            RejectReason::KiteCoverViolation => "KiteCoverViolation",
            RejectReason::NonplanarStarGraph => "NonplanarStarGraph",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// The K4s selected to be embedded as kites. Every edge of the host lies in
/// exactly one of them, so any two share at most one vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KiteSet {
    /// Sorted vertex quadruples, in lexicographic order.
    pub kites: Vec<[usize; 4]>,
}

/// Counters collected during recognition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    /// Number of K4s listed (0 if listing did not run or timed out).
    pub k4_count: usize,
    /// Number of selected kites.
    pub kite_count: usize,
    /// Essential steps spent on K4 listing.
    pub steps: u64,
    /// The step budget in force.
    pub step_cap: u64,
}

/// Verdict of [`recognize_optimal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The graph is optimal NIC-planar; the witness embedding is attached.
    Accepted(Box<NicEmbedding>),
    /// The graph is not optimal NIC-planar.
    Rejected(RejectReason),
}

/// Verdict plus the selected kite set and counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionResult {
    /// Accept or reject.
    pub verdict: Verdict,
    /// The selected K4s, when the pipeline got that far.
    pub kite_set: Option<KiteSet>,
    /// Counters.
    pub diagnostics: Diagnostics,
}

impl RecognitionResult {
    /// Whether the graph was accepted.
    pub fn is_accepted(&self) -> bool {
        matches!(self.verdict, Verdict::Accepted(_))
    }

    /// The witness embedding, if accepted.
    pub fn embedding(&self) -> Option<&NicEmbedding> {
        match &self.verdict {
            Verdict::Accepted(e) => Some(e),
            Verdict::Rejected(_) => None,
        }
    }

    /// The rejection reason, if rejected.
    pub fn reason(&self) -> Option<RejectReason> {
        match self.verdict {
            Verdict::Accepted(_) => None,
            Verdict::Rejected(r) => Some(r),
        }
    }
}

/// Recognizes optimal NIC-planar graphs with the default `256 · n` budget.
pub fn recognize_optimal(g: &Graph) -> RecognitionResult {
    recognize_optimal_with(g, 256)
}

/// Recognizes optimal NIC-planar graphs with a budget of
/// `step_cap_multiplier · n` essential steps for K4 listing.
pub fn recognize_optimal_with(g: &Graph, step_cap_multiplier: u64) -> RecognitionResult {
    let (n, m) = (g.n(), g.m());
    let step_cap = step_cap_multiplier.saturating_mul(n as u64);
    let mut diagnostics = Diagnostics {
        step_cap,
        ..Diagnostics::default()
    };
    let reject = |r: RejectReason, d: Diagnostics, ks: Option<KiteSet>| RecognitionResult {
        verdict: Verdict::Rejected(r),
        kite_set: ks,
        diagnostics: d,
    };
    if n < 5 {
        return reject(RejectReason::StructurallyInvalid, diagnostics, None);
    }
    if 5 * m as u128 != 18 * (n as u128 - 2) {
        return reject(RejectReason::EdgeCountMismatch, diagnostics, None);
    }
    if !g.is_biconnected() {
        return reject(RejectReason::StructurallyInvalid, diagnostics, None);
    }
    let catalog = match list_k4(g, step_cap) {
        K4Outcome::Complete(c) => c,
        K4Outcome::Timeout { steps } => {
            diagnostics.steps = steps;
            return reject(RejectReason::ArboricityTimeout, diagnostics, None);
        }
    };
    diagnostics.steps = catalog.steps;
    diagnostics.k4_count = catalog.len();
    let kites = select_kites(&catalog);
    diagnostics.kite_count = kites.kites.len();
    if !covers_each_edge_once(&catalog, &kites) {
        return reject(RejectReason::KiteCoverViolation, diagnostics, Some(kites));
    }
    let (star, _) = build_star_graph(g, &kites);
    let Some(rot) = test_planarity(&star).rotation() else {
        return reject(RejectReason::NonplanarStarGraph, diagnostics, Some(kites));
    };
    let emb =
        reinsert_kites(g, &rot, &kites).expect("planar star graph yields a valid kite reinsertion");
    RecognitionResult {
        verdict: Verdict::Accepted(Box::new(emb)),
        kite_set: Some(kites),
        diagnostics,
    }
}

/// Selects every K4 that is the only member of some edge bucket.
fn select_kites(catalog: &K4Catalog) -> KiteSet {
    let mut chosen = vec![false; catalog.len()];
    for b in &catalog.buckets {
        if let [only] = b.as_slice() {
            chosen[*only] = true;
        }
    }
    KiteSet {
        kites: catalog
            .k4s
            .iter()
            .zip(&chosen)
            .filter(|(_, &c)| c)
            .map(|(k, _)| *k)
            .collect(),
    }
}

fn covers_each_edge_once(catalog: &K4Catalog, kites: &KiteSet) -> bool {
    let mut chosen = vec![false; catalog.len()];
    // Both lists are sorted, so a merge pass finds the selected indices.
    let mut j = 0;
    for (i, k) in catalog.k4s.iter().enumerate() {
        if j < kites.kites.len() && kites.kites[j] == *k {
            chosen[i] = true;
            j += 1;
        }
    }
    catalog
        .buckets
        .iter()
        .all(|b| b.iter().filter(|&&i| chosen[i]).count() == 1)
}

/// Replaces every kite's six edges by a star: vertex `n + i` is joined to
/// the four vertices of kite `i`. Returns the star graph and the ids of the
/// star centers.
pub fn build_star_graph(g: &Graph, kites: &KiteSet) -> (Graph, Vec<usize>) {
    let n = g.n();
    let remove: Vec<(usize, usize)> = kites.kites.iter().flat_map(K4Catalog::edges_of).collect();
    let base = g.without_edges(&remove);
    let mut edges = base.edges().to_vec();
    let mut centers = Vec::with_capacity(kites.kites.len());
    for (i, k) in kites.kites.iter().enumerate() {
        let z = n + i;
        centers.push(z);
        edges.extend(k.iter().map(|&v| (v, z)));
    }
    let star = Graph::from_edges_dedup(n + kites.kites.len(), edges);
    (star, centers)
}

/// Turns a planar embedding of the star graph into a NIC embedding: the
/// center of kite `i` becomes crossing dummy `i`, crossing the edges between
/// opposite vertices in its rotation, and the four remaining kite edges are
/// inserted next to the center so that they close the four triangles
/// around the crossing.
pub fn reinsert_kites(
    g: &Graph,
    star_rotation: &Rotation,
    kites: &KiteSet,
) -> Result<NicEmbedding, EmbeddingError> {
    let n = g.n();
    let mut crossings = Vec::with_capacity(kites.kites.len());
    for i in 0..kites.kites.len() {
        let z = n + i;
        let around = star_rotation.get(z).map(Vec::as_slice).unwrap_or_default();
        if around.len() != 4 {
            return Err(EmbeddingError::InvalidRotation(format!(
                "star center {z} does not have degree 4"
            )));
        }
        crossings.push(Crossing::new(
            (around[0], around[2]),
            (around[1], around[3]),
        ));
    }
    // Around a kite vertex x, the center z is flanked by the two kite
    // vertices adjacent to x around z: the successor of x before z and its
    // predecessor after z, so that each face p → z → q gains the edge p–q.
    // Each rotation is rebuilt in one pass, keeping the work linear.
    let mut rot: Rotation = Vec::with_capacity(star_rotation.len());
    for (x, r) in star_rotation.iter().enumerate() {
        if x >= n {
            rot.push(r.clone());
            continue;
        }
        let mut out = Vec::with_capacity(r.len() + 2 * r.iter().filter(|&&w| w >= n).count());
        for &w in r {
            if w >= n {
                let around = &star_rotation[w];
                let j = around.iter().position(|&y| y == x).ok_or_else(|| {
                    EmbeddingError::InvalidRotation(format!("star center {w} does not list {x}"))
                })?;
                out.extend([around[(j + 1) % 4], w, around[(j + 3) % 4]]);
            } else {
                out.push(w);
            }
        }
        rot.push(out);
    }
    NicEmbedding::new(g.clone(), crossings, rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::verify_nic;
    use crate::graph_core::complete_graph;

    #[test]
    fn small_rejections() {
        assert_eq!(
            recognize_optimal(&complete_graph(5)).reason(),
            Some(RejectReason::EdgeCountMismatch)
        );
        assert_eq!(
            recognize_optimal(&complete_graph(4)).reason(),
            Some(RejectReason::StructurallyInvalid)
        );
    }

    #[test]
    fn single_kite_reinsertion() {
        let g = complete_graph(4);
        let ks = KiteSet {
            kites: vec![[0, 1, 2, 3]],
        };
        let (star, centers) = build_star_graph(&g, &ks);
        assert_eq!((star.n(), star.m()), (5, 4));
        assert_eq!(centers, vec![4]);
        let rot = test_planarity(&star).rotation().unwrap();
        let emb = reinsert_kites(&g, &rot, &ks).unwrap();
        assert!(verify_nic(&emb).pass);
        assert_eq!(emb.crossings().len(), 1);
        let empty = KiteSet::default();
        let (same, _) = build_star_graph(&g, &empty);
        assert_eq!(same, g);
    }
}
