//! The generalized dual of a maximal NIC-planar embedding.
//!
//! Faces of the planarization are grouped into nodes: the four triangles
//! around a crossing form a *Kite* node, the three faces around a degree-3
//! center vertex whose neighbors form a triangle form a *Tetrahedron* node,
//! and every other face is a *Triangle* node. Two nodes are adjacent once for
//! every planar edge segment on their common boundary.
//!
//! On top of the dual this module checks the adjacency rules of maximal
//! embeddings, computes levels (distance to the nearest kite), performs the
//! exact-rational quarter-sphere edge accounting, and implements kite flips.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::embedding::{
    norm, trace_faces, Crossing, MaximalityOptions, NicEmbedding, VerificationReport,
};
use crate::error::DualError;
use crate::graph_core::Graph;

/// Exact rational numbers used for all fractional weights.
pub type Q = Ratio<i64>;

/// Label of a dual node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NodeKind {
    /// Four faces around a crossing.
    Kite,
    /// Three faces around the center of a simple tetrahedron.
    Tetrahedron,
    /// A single triangular face.
    Triangle,
}

impl NodeKind {
    /// Lower-case name used in reports.
    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Kite => "kite",
            NodeKind::Tetrahedron => "tetrahedron",
            NodeKind::Triangle => "triangle",
        }
    }
}

/// A node of the generalized dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNode {
    /// Node label.
    pub kind: NodeKind,
    /// Indices of the grouped planarization faces.
    pub faces: Vec<usize>,
    /// Sorted original vertices on the grouped faces (dummies excluded).
    pub vertices: Vec<usize>,
    /// For kites: index of the crossing.
    pub crossing: Option<usize>,
    /// For tetrahedra: the degree-3 center vertex.
    pub center: Option<usize>,
}

/// A dual edge, dual to the planar edge `primal`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualEdge {
    /// Smaller endpoint node id.
    pub a: usize,
    /// Larger endpoint node id.
    pub b: usize,
    /// The normalized primal edge separating the two face groups.
    pub primal: (usize, usize),
}

/// The generalized dual of an embedding. Node ids are canonical: nodes are
/// ordered by their sorted vertex set (then by kind).
#[derive(Clone, Debug)]
pub struct GeneralizedDual {
    /// Nodes in canonical order.
    pub nodes: Vec<DualNode>,
    /// Edges, possibly parallel, sorted by endpoints then primal edge.
    pub edges: Vec<DualEdge>,
    adj: Vec<Vec<usize>>,
    host_m: usize,
    crossings: usize,
    face_count: usize,
}

impl GeneralizedDual {
    /// Neighbor node ids of `q`, with multiplicity, in edge order.
    pub fn neighbors(&self, q: usize) -> Vec<usize> {
        self.adj[q]
            .iter()
            .map(|&e| {
                if self.edges[e].a == q {
                    self.edges[e].b
                } else {
                    self.edges[e].a
                }
            })
            .collect()
    }

    /// Number of incident dual edges.
    pub fn degree(&self, q: usize) -> usize {
        self.adj[q].len()
    }

    /// Ids of the edges incident to `q`.
    pub fn incident_edges(&self, q: usize) -> &[usize] {
        &self.adj[q]
    }

    /// Distinct kite neighbors of `q`.
    pub fn kite_neighbors(&self, q: usize) -> BTreeSet<usize> {
        self.neighbors(q)
            .into_iter()
            .filter(|&r| self.nodes[r].kind == NodeKind::Kite)
            .collect()
    }

    /// Whether a non-kite node is adjacent to a kite.
    pub fn is_marked(&self, q: usize) -> bool {
        !self.kite_neighbors(q).is_empty()
    }

    /// Number of nodes of the given kind.
    pub fn count(&self, kind: NodeKind) -> usize {
        self.nodes.iter().filter(|q| q.kind == kind).count()
    }

    /// Total number of planarization faces covered by the nodes.
    pub fn face_count(&self) -> usize {
        self.face_count
    }

    /// Edge count of the host graph.
    pub fn host_m(&self) -> usize {
        self.host_m
    }

    /// Number of crossings of the embedding.
    pub fn crossings(&self) -> usize {
        self.crossings
    }

    /// Whether no two dual edges join the same pair of nodes.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.a, e.b)))
    }

    /// The underlying simple graph (parallel edges merged).
    pub fn simple_graph(&self) -> Graph {
        Graph::from_edges_dedup(self.nodes.len(), self.edges.iter().map(|e| (e.a, e.b)))
    }

    /// Whether the dual is bipartite between kites and non-kites.
    pub fn is_kite_bipartite(&self) -> bool {
        self.edges.iter().all(|e| {
            (self.nodes[e.a].kind == NodeKind::Kite) != (self.nodes[e.b].kind == NodeKind::Kite)
        })
    }

    /// Canonical key of a node: kind plus sorted vertex set.
    pub fn key(&self, q: usize) -> (NodeKind, Vec<usize>) {
        (self.nodes[q].kind, self.nodes[q].vertices.clone())
    }

    /// Finds a node by kind and vertex set.
    pub fn find(&self, kind: NodeKind, vertices: &[usize]) -> Option<usize> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.nodes
            .iter()
            .position(|q| q.kind == kind && q.vertices == v)
    }

    /// Primal edge shared by two adjacent nodes (the first, if parallel).
    pub fn shared_edge(&self, q: usize, r: usize) -> Option<(usize, usize)> {
        let (a, b) = (q.min(r), q.max(r));
        self.adj[q]
            .iter()
            .map(|&e| self.edges[e])
            .find(|e| e.a == a && e.b == b)
            .map(|e| e.primal)
    }
}

/// Groups the faces of a maximal embedding into kite, tetrahedron and
/// triangle nodes and connects them along planar edges.
pub fn build_dual(emb: &NicEmbedding) -> Result<GeneralizedDual, DualError> {
    let fm = trace_faces(emb)?;
    let not_max = |m: String| DualError::NotMaximalEmbedding(m);
    if let Some(f) = fm.faces.iter().find(|f| f.len() != 3) {
        return Err(not_max(format!("face {:?} is not a triangle", f.corners)));
    }
    let n = emb.n();
    let g = emb.graph();
    let mut owner = vec![usize::MAX; fm.faces.len()];
    let mut nodes: Vec<DualNode> = Vec::new();
    let claim = |owner: &mut Vec<usize>, f: usize, id: usize| -> Result<(), DualError> {
        if owner[f] != usize::MAX && owner[f] != id {
            return Err(DualError::NotMaximalEmbedding(format!(
                "face {f} belongs to two face groups"
            )));
        }
        owner[f] = id;
        Ok(())
    };
    for (i, c) in emb.crossings().iter().enumerate() {
        let x = emb.dummy(i);
        let id = nodes.len();
        let mut faces: Vec<usize> = emb.rotation()[x]
            .iter()
            .filter_map(|&y| fm.face_of(x, y))
            .collect();
        faces.sort_unstable();
        faces.dedup();
        if faces.len() != 4 {
            return Err(not_max(format!(
                "crossing x{i} is not surrounded by four faces"
            )));
        }
        for &f in &faces {
            claim(&mut owner, f, id)?;
        }
        let vertices: BTreeSet<usize> = c.vertex_set();
        nodes.push(DualNode {
            kind: NodeKind::Kite,
            faces,
            vertices: vertices.into_iter().collect(),
            crossing: Some(i),
            center: None,
        });
    }
    let mut is_center = vec![false; n];
    for v in 0..n {
        let r = &emb.rotation()[v];
        if r.len() != 3 || r.iter().any(|&w| emb.is_dummy(w)) {
            continue;
        }
        let faces: Vec<usize> = r.iter().filter_map(|&w| fm.face_of(v, w)).collect();
        if faces.iter().any(|&f| owner[f] != usize::MAX) {
            continue;
        }
        let (a, b, c) = (r[0], r[1], r[2]);
        if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
            continue;
        }
        let id = nodes.len();
        for &f in &faces {
            claim(&mut owner, f, id)?;
        }
        let mut vertices = vec![v, a, b, c];
        vertices.sort_unstable();
        let mut faces = faces;
        faces.sort_unstable();
        is_center[v] = true;
        nodes.push(DualNode {
            kind: NodeKind::Tetrahedron,
            faces,
            vertices,
            crossing: None,
            center: Some(v),
        });
    }
    for (f, face) in fm.faces.iter().enumerate() {
        if owner[f] != usize::MAX {
            continue;
        }
        owner[f] = nodes.len();
        let mut vertices = face.corners.clone();
        vertices.sort_unstable();
        nodes.push(DualNode {
            kind: NodeKind::Triangle,
            faces: vec![f],
            vertices,
            crossing: None,
            center: None,
        });
    }
    // Canonical order.
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&p, &q| {
        (&nodes[p].vertices, nodes[p].kind).cmp(&(&nodes[q].vertices, nodes[q].kind))
    });
    let mut rank = vec![0; nodes.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let nodes: Vec<DualNode> = order.iter().map(|&i| nodes[i].clone()).collect();
    let owner: Vec<usize> = owner.iter().map(|&o| rank[o]).collect();

    let mut edges = Vec::new();
    for (u, r) in emb.rotation().iter().enumerate().take(n) {
        for &v in r {
            if v <= u || emb.is_dummy(v) || is_center[u] || is_center[v] {
                continue;
            }
            let (Some(f1), Some(f2)) = (fm.face_of(u, v), fm.face_of(v, u)) else {
                continue;
            };
            let (p, q) = (owner[f1], owner[f2]);
            if p == q {
                return Err(not_max(format!(
                    "planar edge {u}-{v} lies inside one face group"
                )));
            }
            edges.push(DualEdge {
                a: p.min(q),
                b: p.max(q),
                primal: (u, v),
            });
        }
    }
    edges.sort_by_key(|e| (e.a, e.b, e.primal));
    let mut adj = vec![Vec::new(); nodes.len()];
    for (i, e) in edges.iter().enumerate() {
        adj[e.a].push(i);
        adj[e.b].push(i);
    }
    Ok(GeneralizedDual {
        nodes,
        edges,
        adj,
        host_m: g.m(),
        crossings: emb.crossings().len(),
        face_count: fm.faces.len(),
    })
}

/// Apex vertices `(w, x)` of two adjacent triangle nodes sharing edge `u–v`.
fn apexes(dual: &GeneralizedDual, r: usize, s: usize) -> Option<((usize, usize), usize, usize)> {
    let (u, v) = dual.shared_edge(r, s)?;
    let w = *dual.nodes[r].vertices.iter().find(|&&z| z != u && z != v)?;
    let x = *dual.nodes[s].vertices.iter().find(|&&z| z != u && z != v)?;
    Some(((u, v), w, x))
}

/// Checks simplicity, degrees and the five adjacency rules of maximal
/// embeddings:
/// (i) no two kites are adjacent; (ii) a tetrahedron is adjacent only to
/// kites and marked triangles; (iii) every tetrahedron is marked; (iv) two
/// adjacent unmarked triangles are tetrahedral (their apexes are adjacent in
/// `host`); (v) a triangle and two triangle neighbors are never all unmarked.
pub fn check_adjacency_rules(dual: &GeneralizedDual, host: &Graph) -> VerificationReport {
    use NodeKind::*;
    let mut rep = VerificationReport::new();
    let mut seen = BTreeSet::new();
    for e in &dual.edges {
        if !seen.insert((e.a, e.b)) {
            rep.push("dual-simple", "parallel dual edges", vec![e.a, e.b]);
        }
    }
    for (q, node) in dual.nodes.iter().enumerate() {
        let want = if node.kind == Kite { 4 } else { 3 };
        if dual.degree(q) != want {
            rep.push(
                "dual-degree",
                format!("{} node has degree {}", node.kind.name(), dual.degree(q)),
                vec![q],
            );
        }
    }
    let marked: Vec<bool> = (0..dual.nodes.len()).map(|q| dual.is_marked(q)).collect();
    for e in &dual.edges {
        let (ka, kb) = (dual.nodes[e.a].kind, dual.nodes[e.b].kind);
        if ka == Kite && kb == Kite {
            rep.push("rule-i", "adjacent kite nodes", vec![e.a, e.b]);
        }
        for (t, o, ko) in [(e.a, e.b, kb), (e.b, e.a, ka)] {
            if dual.nodes[t].kind == Tetrahedron && !(ko == Kite || (ko == Triangle && marked[o])) {
                rep.push(
                    "rule-ii",
                    format!(
                        "tetrahedron adjacent to a {} node",
                        if ko == Triangle {
                            "unmarked triangle"
                        } else {
                            ko.name()
                        }
                    ),
                    vec![t, o],
                );
            }
        }
        if ka == Triangle && kb == Triangle && !marked[e.a] && !marked[e.b] {
            let tetrahedral = apexes(dual, e.a, e.b).is_some_and(|(_, w, x)| host.has_edge(w, x));
            if !tetrahedral {
                rep.push(
                    "rule-iv",
                    "adjacent unmarked triangles are not tetrahedral",
                    vec![e.a, e.b],
                );
            }
        }
    }
    for (q, node) in dual.nodes.iter().enumerate() {
        if node.kind == Tetrahedron && !marked[q] {
            rep.push("rule-iii", "unmarked tetrahedron", vec![q]);
        }
        if node.kind == Triangle && !marked[q] {
            let tri: BTreeSet<usize> = dual
                .neighbors(q)
                .into_iter()
                .filter(|&r| dual.nodes[r].kind == Triangle)
                .collect();
            let tri: Vec<usize> = tri.into_iter().collect();
            for i in 0..tri.len() {
                for j in i + 1..tri.len() {
                    if !marked[tri[i]] && !marked[tri[j]] {
                        rep.push(
                            "rule-v",
                            "triangle with two triangle neighbors, all unmarked",
                            vec![q, tri[i], tri[j]],
                        );
                    }
                }
            }
        }
    }
    rep
}

/// Levels (distance to the nearest kite) and marks of all nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMap {
    /// Level per node.
    pub level: Vec<u8>,
    /// Whether the node is a non-kite adjacent to a kite.
    pub marked: Vec<bool>,
}

/// Breadth-first search from all kite nodes. Fails if there is no kite, a
/// node is unreachable or farther than two, or a tetrahedron is not at level 1.
pub fn compute_levels(dual: &GeneralizedDual) -> Result<LevelMap, DualError> {
    let k = dual.nodes.len();
    let mut dist = vec![usize::MAX; k];
    let mut queue = VecDeque::new();
    for (q, node) in dual.nodes.iter().enumerate() {
        if node.kind == NodeKind::Kite {
            dist[q] = 0;
            queue.push_back(q);
        }
    }
    if queue.is_empty() {
        return Err(DualError::LevelExceedsTwo(
            "the dual has no kite node".into(),
        ));
    }
    while let Some(q) = queue.pop_front() {
        for r in dual.neighbors(q) {
            if dist[r] == usize::MAX {
                dist[r] = dist[q] + 1;
                queue.push_back(r);
            }
        }
    }
    for (q, &d) in dist.iter().enumerate() {
        if d > 2 {
            return Err(DualError::LevelExceedsTwo(format!(
                "node {q} is at distance {}",
                if d == usize::MAX {
                    "infinite".to_string()
                } else {
                    d.to_string()
                }
            )));
        }
        if dual.nodes[q].kind == NodeKind::Tetrahedron && d != 1 {
            return Err(DualError::LevelExceedsTwo(format!(
                "tetrahedron node {q} has level {d}"
            )));
        }
    }
    let marked = (0..k)
        .map(|q| dual.nodes[q].kind != NodeKind::Kite && dist[q] == 1)
        .collect();
    Ok(LevelMap {
        level: dist.into_iter().map(|d| d as u8).collect(),
        marked,
    })
}

/// Content of the quarter sphere of kite `kite` towards its neighbor `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarterSphere {
    /// Kite node.
    pub kite: usize,
    /// Neighbor of the kite spanning this quarter.
    pub root: usize,
    /// Sum of triangle-node fractions.
    pub triangles: Q,
    /// Sum of tetrahedron-node fractions.
    pub tetrahedra: Q,
    /// Planar edges attributed (3/2 per triangle, 9/2 per tetrahedron).
    pub planar_edges: Q,
    /// Planar edges after moving tetrahedron shares towards neighboring
    /// triangle quarters (used for the upper bound).
    pub balanced_planar_edges: Q,
}

/// Result of the quarter-sphere accounting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereAccount {
    /// All quarter spheres, ordered by (kite, root).
    pub quarters: Vec<QuarterSphere>,
    /// Planar edges per sphere (two for the kite's own boundary plus its
    /// four quarters), keyed by kite node.
    pub sphere_totals: BTreeMap<usize, Q>,
    /// Sum of all sphere totals; equals `m − 2c`.
    pub global_planar_edges: Q,
}

fn q_str(x: Q) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl SphereAccount {
    /// JSON rendering with rationals as `"a/b"` strings.
    pub fn to_json(&self) -> Value {
        let quarters: Vec<Value> = self
            .quarters
            .iter()
            .map(|s| {
                json!({
                    "kite": s.kite, "root": s.root,
                    "triangles": q_str(s.triangles), "tetrahedra": q_str(s.tetrahedra),
                    "planar_edges": q_str(s.planar_edges),
                    "balanced_planar_edges": q_str(s.balanced_planar_edges),
                })
            })
            .collect();
        let spheres: Vec<Value> = self
            .sphere_totals
            .iter()
            .map(|(k, t)| json!({ "kite": k, "planar_edges": q_str(*t) }))
            .collect();
        json!({ "quarters": quarters, "spheres": spheres, "global_planar_edges": q_str(self.global_planar_edges) })
    }
}

/// Exact accounting of planar edges per quarter sphere.
///
/// Each non-kite node is split equally among all quarter spheres `(q, r)`
/// containing it: a level-1 node `t` belongs to `(q, t)` for every adjacent
/// kite `q`; a level-2 node `s` belongs to `(q, r)` for every level-1
/// neighbor `r` of `s` and every kite `q` adjacent to `r`. A triangle
/// stands for 3/2 planar edges, a tetrahedron for 9/2, and each kite adds
/// 2 planar edges to its own sphere.
///
/// Bounds checked: every quarter holds at least 1/2 planar edge; after
/// moving 3/4 planar edge from a wholly-owned tetrahedron quarter to the
/// quarters of each of its triangle neighbors, every quarter holds at most
/// 3; every sphere totals between 4 and 14; the grand total is `m − 2c`.
pub fn quarter_sphere_accounting(
    dual: &GeneralizedDual,
    levels: &LevelMap,
) -> Result<SphereAccount, DualError> {
    use NodeKind::*;
    let weight = |q: usize| -> Q {
        match dual.nodes[q].kind {
            Triangle => Q::new(3, 2),
            Tetrahedron => Q::new(9, 2),
            Kite => Q::from_integer(0),
        }
    };
    let distinct = |q: usize| -> BTreeSet<usize> { dual.neighbors(q).into_iter().collect() };
    let mut quarters: BTreeMap<(usize, usize), (Q, Q)> = BTreeMap::new();
    for (q, node) in dual.nodes.iter().enumerate() {
        if node.kind == Kite {
            for r in distinct(q) {
                quarters.insert((q, r), (Q::from_integer(0), Q::from_integer(0)));
            }
        }
    }
    let mut membership: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dual.nodes.len()];
    for (t, node) in dual.nodes.iter().enumerate() {
        if node.kind == Kite {
            continue;
        }
        let mut mem = BTreeSet::new();
        match levels.level[t] {
            1 => {
                for q in dual.kite_neighbors(t) {
                    mem.insert((q, t));
                }
            }
            2 => {
                for r in distinct(t) {
                    if levels.level[r] == 1 {
                        for q in dual.kite_neighbors(r) {
                            mem.insert((q, r));
                        }
                    }
                }
            }
            l => {
                return Err(DualError::AccountingViolation(format!(
                    "node {t} has level {l}"
                )))
            }
        }
        if mem.is_empty() {
            return Err(DualError::AccountingViolation(format!(
                "node {t} belongs to no quarter sphere"
            )));
        }
        membership[t] = mem.into_iter().collect();
    }
    for (t, mem) in membership.iter().enumerate().filter(|(_, m)| !m.is_empty()) {
        let share = Q::new(1, mem.len() as i64);
        for key in mem {
            let entry = quarters
                .get_mut(key)
                .expect("membership refers to existing quarters");
            if dual.nodes[t].kind == Triangle {
                entry.0 += share;
            } else {
                entry.1 += share;
            }
        }
    }
    let planar: BTreeMap<(usize, usize), Q> = quarters
        .iter()
        .map(|(&k, &(tri, tet))| (k, tri * Q::new(3, 2) + tet * Q::new(9, 2)))
        .collect();
    let mut balanced = planar.clone();
    for (t, node) in dual.nodes.iter().enumerate() {
        if node.kind != Tetrahedron || membership[t].len() != 1 {
            continue;
        }
        let from = membership[t][0];
        for s in distinct(t) {
            if dual.nodes[s].kind != Triangle {
                continue;
            }
            let targets: Vec<(usize, usize)> =
                dual.kite_neighbors(s).into_iter().map(|q| (q, s)).collect();
            if targets.is_empty() {
                continue;
            }
            let amount = Q::new(3, 4);
            *balanced.get_mut(&from).expect("exists") -= amount;
            let part = amount / Q::from_integer(targets.len() as i64);
            for key in targets {
                *balanced
                    .get_mut(&key)
                    .expect("kite-triangle quarter exists") += part;
            }
        }
    }
    let mut out = Vec::new();
    let mut sphere_totals: BTreeMap<usize, Q> = BTreeMap::new();
    for (q, node) in dual.nodes.iter().enumerate() {
        if node.kind == Kite {
            sphere_totals.insert(q, Q::from_integer(2));
        }
    }
    for (&(q, r), &(tri, tet)) in &quarters {
        let p = planar[&(q, r)];
        *sphere_totals.get_mut(&q).expect("kite") += p;
        out.push(QuarterSphere {
            kite: q,
            root: r,
            triangles: tri,
            tetrahedra: tet,
            planar_edges: p,
            balanced_planar_edges: balanced[&(q, r)],
        });
    }
    let global: Q = sphere_totals.values().copied().sum();
    let acct = SphereAccount {
        quarters: out,
        sphere_totals,
        global_planar_edges: global,
    };
    for s in &acct.quarters {
        if s.planar_edges < Q::new(1, 2) {
            return Err(DualError::AccountingViolation(format!(
                "quarter ({}, {}) holds {} < 1/2 planar edges",
                s.kite,
                s.root,
                q_str(s.planar_edges)
            )));
        }
        if s.balanced_planar_edges > Q::from_integer(3) {
            return Err(DualError::AccountingViolation(format!(
                "quarter ({}, {}) holds {} > 3 planar edges",
                s.kite,
                s.root,
                q_str(s.balanced_planar_edges)
            )));
        }
    }
    for (&q, &t) in &acct.sphere_totals {
        if t < Q::from_integer(4) || t > Q::from_integer(14) {
            return Err(DualError::AccountingViolation(format!(
                "sphere of kite {q} holds {} planar edges",
                q_str(t)
            )));
        }
    }
    let expected = Q::from_integer(dual.host_m() as i64 - 2 * dual.crossings() as i64);
    // Every non-kite node is fully distributed, so the total must match.
    let unit: Q =
        (0..dual.nodes.len()).map(weight).sum::<Q>() + Q::from_integer(2 * dual.count(Kite) as i64);
    if global != expected || unit != expected {
        return Err(DualError::AccountingViolation(format!(
            "total planar edges {} differ from m - 2c = {}",
            q_str(global),
            q_str(expected)
        )));
    }
    Ok(acct)
}

/// A kite flip applicable to an embedding: triangles `r` and `s` share a
/// planar edge, their apexes span a crossing edge of kite `kite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipCandidate {
    /// Kite node whose crossing edge is re-routed.
    pub kite: usize,
    /// First triangle node.
    pub r: usize,
    /// Second triangle node.
    pub s: usize,
}

/// Result of a kite flip together with the verification of the new embedding.
#[derive(Clone, Debug)]
pub struct FlipOutcome {
    /// The re-embedded graph.
    pub embedding: NicEmbedding,
    /// NIC verification of the result.
    pub nic: VerificationReport,
    /// Maximality verification of the result.
    pub maximal: VerificationReport,
}

fn check_flip(
    dual: &GeneralizedDual,
    emb: &NicEmbedding,
    kite: usize,
    r: usize,
    s: usize,
) -> Result<(usize, (usize, usize), (usize, usize)), DualError> {
    let pre = |m: &str| DualError::PreconditionViolated(m.to_string());
    let kn = dual
        .nodes
        .get(kite)
        .ok_or_else(|| pre("unknown kite node"))?;
    if kn.kind != NodeKind::Kite {
        return Err(pre("the named node is not a kite"));
    }
    for t in [r, s] {
        if dual.nodes.get(t).map(|x| x.kind) != Some(NodeKind::Triangle) {
            return Err(pre("the pair must consist of triangle nodes"));
        }
    }
    let ((u, v), w, x) =
        apexes(dual, r, s).ok_or_else(|| pre("the triangle nodes are not adjacent"))?;
    let (kr, ks) = (dual.kite_neighbors(r), dual.kite_neighbors(s));
    if !((kr.is_empty() && ks.is_empty()) || (kr == ks && kr.len() == 1)) {
        return Err(pre(
            "the triangles are neither both unmarked nor adjacent to a single common kite",
        ));
    }
    if !emb.graph().has_edge(w, x) {
        return Err(pre("the triangles are not tetrahedral"));
    }
    let ci = kn.crossing.expect("kite nodes carry their crossing");
    let c = emb.crossings()[ci];
    let [e1, e2] = c.edges();
    let wx = norm(w, x);
    if e1 != wx && e2 != wx {
        return Err(pre(
            "the tetrahedral edge is not a crossing edge of the kite",
        ));
    }
    Ok((ci, wx, norm(u, v)))
}

/// All flips whose preconditions hold in `emb`.
pub fn flip_candidates(emb: &NicEmbedding, dual: &GeneralizedDual) -> Vec<FlipCandidate> {
    let mut out = Vec::new();
    for e in &dual.edges {
        if dual.nodes[e.a].kind != NodeKind::Triangle || dual.nodes[e.b].kind != NodeKind::Triangle
        {
            continue;
        }
        for (k, node) in dual.nodes.iter().enumerate() {
            if node.kind == NodeKind::Kite && check_flip(dual, emb, k, e.a, e.b).is_ok() {
                out.push(FlipCandidate {
                    kite: k,
                    r: e.a,
                    s: e.b,
                });
            }
        }
    }
    out.sort_by_key(|c| (c.kite, c.r, c.s));
    out.dedup();
    out
}

/// Re-routes the tetrahedral edge of triangles `r, s` (a crossing edge of
/// `kite`) so that it crosses their shared edge instead. The old crossing
/// partner becomes planar. The new embedding is verified and the reports
/// are returned alongside it; the flip itself does not guarantee maximality.
pub fn kite_flip(
    emb: &NicEmbedding,
    kite: usize,
    pair: (usize, usize),
) -> Result<FlipOutcome, DualError> {
    let dual = build_dual(emb)?;
    let (ci, wx, uv) = check_flip(&dual, emb, kite, pair.0, pair.1)?;
    let mut crossings: Vec<Crossing> = emb.crossings().to_vec();
    let old = crossings[ci];
    let [e1, _] = old.edges();
    crossings[ci] = if e1 == wx {
        Crossing::new(wx, uv)
    } else {
        Crossing::new(uv, wx)
    };
    let embedding = NicEmbedding::from_crossings(emb.graph().clone(), crossings).map_err(|e| {
        DualError::PreconditionViolated(format!("re-routed edge cannot be embedded: {e}"))
    })?;
    let nic = crate::embedding::verify_nic(&embedding);
    let maximal =
        crate::embedding::verify_maximal_embedding(&embedding, MaximalityOptions::default());
    Ok(FlipOutcome {
        embedding,
        nic,
        maximal,
    })
}

/// Checks that `after` arises from `before` by the flip of kite `q` with
/// triangles `r, s`: those three nodes are replaced by two adjacent
/// tetrahedral triangles splitting `q`'s neighbors two and two, and one kite
/// inheriting the other neighbors of `r` and `s`; all other nodes and
/// adjacencies are unchanged.
pub fn check_flip_transformation(
    before: &GeneralizedDual,
    after: &GeneralizedDual,
    host: &Graph,
    q: usize,
    r: usize,
    s: usize,
) -> VerificationReport {
    use NodeKind::*;
    let mut rep = VerificationReport::new();
    let kite_vs = before.nodes[q].vertices.clone();
    let mut rs_vs: Vec<usize> = before.nodes[r]
        .vertices
        .iter()
        .chain(&before.nodes[s].vertices)
        .copied()
        .collect();
    rs_vs.sort_unstable();
    rs_vs.dedup();
    let Some(t) = after.find(Kite, &rs_vs) else {
        rep.push(
            "flip-kite",
            "no kite on the vertices of the flipped triangles",
            rs_vs,
        );
        return rep;
    };
    let halves: Vec<usize> = (0..after.nodes.len())
        .filter(|&p| {
            after.nodes[p].kind == Triangle
                && after.nodes[p].vertices.iter().all(|v| kite_vs.contains(v))
        })
        .filter(|&p| before.find(Triangle, &after.nodes[p].vertices).is_none())
        .collect();
    if halves.len() != 2 {
        rep.push(
            "flip-triangles",
            format!(
                "expected 2 new triangles on the old kite, found {}",
                halves.len()
            ),
            halves,
        );
        return rep;
    }
    let (q1, q2) = (halves[0], halves[1]);
    if after.shared_edge(q1, q2).is_none() {
        rep.push(
            "flip-triangles",
            "the two new triangles are not adjacent",
            vec![q1, q2],
        );
    } else if !apexes(after, q1, q2).is_some_and(|(_, w, x)| host.has_edge(w, x)) {
        rep.push(
            "flip-triangles",
            "the two new triangles are not tetrahedral",
            vec![q1, q2],
        );
    }
    if before.nodes.len() != after.nodes.len() {
        rep.push(
            "flip-nodes",
            "node count changed by more than the flip",
            vec![],
        );
    }
    // Map every node of `before` to its image key in `after`.
    let image = |p: usize| -> Vec<usize> {
        if p == q {
            vec![q1, q2]
        } else if p == r || p == s {
            vec![t]
        } else {
            after
                .find(before.nodes[p].kind, &before.nodes[p].vertices)
                .into_iter()
                .collect()
        }
    };
    let mut mapped: HashMap<usize, usize> = HashMap::new();
    for p in 0..before.nodes.len() {
        if p == q || p == r || p == s {
            continue;
        }
        match image(p).first() {
            Some(&a) => {
                mapped.insert(p, a);
            }
            None => rep.push("flip-nodes", "an untouched node disappeared", vec![p]),
        }
    }
    if !rep.pass {
        return rep;
    }
    // Untouched adjacencies survive; neighbors of q, r, s move to the new nodes.
    let outside = |ns: Vec<usize>, skip: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = ns
            .into_iter()
            .filter(|x| !skip.contains(x))
            .map(|x| mapped.get(&x).copied().unwrap_or(usize::MAX))
            .collect();
        v.sort_unstable();
        v
    };
    let q_out = outside(before.neighbors(q), &[r, s]);
    let mut q_new = outside(after.neighbors(q1), &[q2, t]);
    let q_new2 = outside(after.neighbors(q2), &[q1, t]);
    let q_touch_rs = before
        .neighbors(q)
        .iter()
        .filter(|x| **x == r || **x == s)
        .count();
    let t_touch_q = after
        .neighbors(t)
        .iter()
        .filter(|x| **x == q1 || **x == q2)
        .count();
    if q_touch_rs != t_touch_q {
        rep.push(
            "flip-adjacency",
            "adjacency between the kite and the flipped triangles not preserved",
            vec![q, r, s],
        );
    }
    if q_new.len() + after.neighbors(q1).iter().filter(|&&x| x == t).count() != 2
        || q_new2.len() + after.neighbors(q2).iter().filter(|&&x| x == t).count() != 2
    {
        rep.push(
            "flip-adjacency",
            "new triangles do not split the kite neighbors two and two",
            vec![q1, q2],
        );
    }
    q_new.extend(q_new2);
    q_new.sort_unstable();
    if q_new != q_out {
        rep.push(
            "flip-adjacency",
            "neighbors of the old kite are not inherited by the new triangles",
            vec![q, q1, q2],
        );
    }
    let mut rs_out = outside(before.neighbors(r), &[s, q]);
    rs_out.extend(outside(before.neighbors(s), &[r, q]));
    rs_out.sort_unstable();
    let t_out = outside(after.neighbors(t), &[q1, q2]);
    if rs_out != t_out {
        rep.push(
            "flip-adjacency",
            "neighbors of the flipped triangles are not inherited by the new kite",
            vec![r, s, t],
        );
    }
    for (&p, &a) in &mapped {
        let fix = |x: usize| -> usize {
            if x == q {
                usize::MAX - 1
            } else if x == r || x == s {
                t
            } else {
                mapped[&x]
            }
        };
        let mut nb: Vec<usize> = before.neighbors(p).into_iter().map(fix).collect();
        let mut na: Vec<usize> = after
            .neighbors(a)
            .into_iter()
            .map(|x| {
                if x == q1 || x == q2 {
                    usize::MAX - 1
                } else {
                    x
                }
            })
            .collect();
        nb.sort_unstable();
        na.sort_unstable();
        if nb != na {
            rep.push(
                "flip-adjacency",
                "adjacency of an untouched node changed",
                vec![p],
            );
        }
    }
    rep
}

/// Renders the dual as Graphviz DOT: diamonds for kites, triangles for
/// triangle nodes and houses for tetrahedra.
pub fn dual_to_dot(dual: &GeneralizedDual) -> String {
    let mut s = String::from("graph dual {\n  node [style=filled, fillcolor=white];\n");
    for (q, node) in dual.nodes.iter().enumerate() {
        let shape = match node.kind {
            NodeKind::Kite => "diamond",
            NodeKind::Triangle => "triangle",
            NodeKind::Tetrahedron => "house",
        };
        let label: Vec<String> = node.vertices.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "  q{q} [shape={shape}, label=\"{}\"];", label.join(","));
    }
    for e in &dual.edges {
        let _ = writeln!(
            s,
            "  q{} -- q{} [label=\"{}-{}\"];",
            e.a, e.b, e.primal.0, e.primal.1
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Crossing;
    use crate::graph_core::Graph;

    /// K5 drawn as a kite on 0..4 plus vertex 4 in the outer face.
    fn k5_kite() -> NicEmbedding {
        let g = crate::graph_core::complete_graph(5);
        NicEmbedding::from_crossings(g, vec![Crossing::new((0, 2), (1, 3))]).unwrap()
    }

    #[test]
    fn k5_dual_census() {
        let e = k5_kite();
        let d = build_dual(&e).unwrap();
        assert_eq!(d.count(NodeKind::Kite), 1);
        assert_eq!(d.count(NodeKind::Triangle), 4);
        assert_eq!(d.face_count(), 8);
        let rep = check_adjacency_rules(&d, e.graph());
        assert!(rep.pass, "{rep:?}");
        let lv = compute_levels(&d).unwrap();
        assert!(lv.level.iter().all(|&l| l <= 2));
        let acct = quarter_sphere_accounting(&d, &lv).unwrap();
        assert_eq!(acct.global_planar_edges, Q::from_integer(10 - 2));
    }

    #[test]
    fn planar_triangulation_has_no_kite_level() {
        let g = Graph::new(
            5,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (1, 4),
                (2, 4),
            ],
        )
        .unwrap();
        let e = NicEmbedding::from_crossings(g, vec![]).unwrap();
        let d = build_dual(&e).unwrap();
        assert!(matches!(
            compute_levels(&d),
            Err(DualError::LevelExceedsTwo(_))
        ));
    }

    #[test]
    fn dot_shapes() {
        let d = build_dual(&k5_kite()).unwrap();
        let dot = dual_to_dot(&d);
        assert!(dot.contains("diamond") && dot.contains("triangle"));
    }
}
