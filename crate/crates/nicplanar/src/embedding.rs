//! NIC-planar embeddings stored as a rotation system of the planarization
//! plus a crossing registry, with face tracing and verification.
//!
//! The planarization has the `n` original vertices `0..n` followed by one
//! dummy vertex per crossing: crossing `i` is the vertex `n + i`, written
//! `"x<i>"` in JSON. A crossing `((a, c), (b, d))` replaces the two edges by
//! the four segments `a–x, x–c, b–x, x–d`; for the edges to really cross, the
//! rotation at the dummy must alternate between them (`a, b, c, d` cyclically,
//! up to reflection).
//!
//! Face walk convention: for a dart `u → v`, the next dart on the same face is
//! `v → w`, where `w` follows `u` in the rotation of `v`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{EmbeddingError, GraphError};
use crate::graph_core::Graph;
use crate::planarity::{self, Rotation};

/// Normalizes an unordered pair to `(min, max)`.
pub fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// One crossing: the edge `first = (a, c)` crosses `second = (b, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    /// First crossing edge, as given.
    pub first: (usize, usize),
    /// Second crossing edge, as given.
    pub second: (usize, usize),
}

impl Crossing {
    /// Creates a crossing between edges `(a, c)` and `(b, d)`.
    pub fn new(first: (usize, usize), second: (usize, usize)) -> Self {
        Crossing { first, second }
    }

    /// Both edges in normalized form.
    pub fn edges(&self) -> [(usize, usize); 2] {
        [
            norm(self.first.0, self.first.1),
            norm(self.second.0, self.second.1),
        ]
    }

    /// The four (not necessarily distinct) endpoints `a, c, b, d`.
    pub fn endpoints(&self) -> [usize; 4] {
        [self.first.0, self.first.1, self.second.0, self.second.1]
    }

    /// Sorted set of endpoints.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.endpoints().into_iter().collect()
    }
}

/// A face of the planarization, as the cyclic sequence of corners visited by
/// the face walk (original vertices and crossing dummies). Segment `i` runs
/// from `corners[i]` to `corners[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Corners in walk order.
    pub corners: Vec<usize>,
}

impl Face {
    /// Number of corners (equals number of boundary segments).
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    /// Whether the face has no corners (never produced by tracing).
    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// Directed boundary segments in walk order.
    pub fn segments(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.corners.len();
        (0..k).map(move |i| (self.corners[i], self.corners[(i + 1) % k]))
    }

    /// Sorted corner set.
    pub fn corner_set(&self) -> BTreeSet<usize> {
        self.corners.iter().copied().collect()
    }
}

/// Faces together with the face index of every directed segment.
#[derive(Clone, Debug)]
pub struct FaceMap {
    /// All faces, in deterministic discovery order.
    pub faces: Vec<Face>,
    dart_face: HashMap<(usize, usize), usize>,
}

impl FaceMap {
    /// Face containing the directed segment `u → v`.
    pub fn face_of(&self, u: usize, v: usize) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }
}

/// One failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Stable identifier of the violated rule.
    pub rule: String,
    /// Human-readable explanation.
    pub message: String,
    /// Vertices (planarization ids) or node ids witnessing the violation.
    pub witness: Vec<usize>,
}

/// Result of a verification pass; `pass` holds iff `violations` is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Whether all applicable checks passed.
    pub pass: bool,
    /// Set when the checks do not apply to the input (the report then passes vacuously).
    pub not_applicable: Option<String>,
    /// All violations found.
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    /// An empty, passing report.
    pub fn new() -> Self {
        VerificationReport {
            pass: true,
            not_applicable: None,
            violations: Vec::new(),
        }
    }

    /// Records a violation.
    pub fn push(&mut self, rule: &str, message: impl Into<String>, witness: Vec<usize>) {
        self.violations.push(Violation {
            rule: rule.to_string(),
            message: message.into(),
            witness,
        });
        self.pass = false;
    }

    /// Appends all violations of `other`.
    pub fn merge(&mut self, other: VerificationReport) {
        for v in other.violations {
            self.violations.push(v);
            self.pass = false;
        }
    }

    /// Whether some violation carries the given rule id.
    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// Options for [`verify_maximal_embedding`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MaximalityOptions {
    /// Also check that any two K5 subgraphs sharing a crossing share at least
    /// three vertices. Enumerates K5s naively; intended for small fixtures.
    pub check_k5_sharing: bool,
}

/// A 1-planar embedding: base graph, crossing registry and the rotation
/// system of the planarization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NicEmbedding {
    graph: Graph,
    crossings: Vec<Crossing>,
    rotation: Rotation,
}

impl NicEmbedding {
    /// Assembles an embedding. Only the shape is checked here (one rotation
    /// list per planarization vertex, ids in range); semantic checks are the
    /// job of [`verify_nic`] and [`trace_faces`].
    pub fn new(
        graph: Graph,
        crossings: Vec<Crossing>,
        rotation: Rotation,
    ) -> Result<Self, EmbeddingError> {
        let np = graph.n() + crossings.len();
        if rotation.len() != np {
            return Err(EmbeddingError::InvalidRotation(format!(
                "expected {np} rotation lists, got {}",
                rotation.len()
            )));
        }
        for (v, r) in rotation.iter().enumerate() {
            if let Some(&w) = r.iter().find(|&&w| w >= np) {
                return Err(EmbeddingError::InvalidRotation(format!(
                    "vertex {v} lists unknown neighbor {w}"
                )));
            }
        }
        for c in &crossings {
            for x in c.endpoints() {
                if x >= graph.n() {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: x,
                        n: graph.n(),
                    }
                    .into());
                }
            }
        }
        Ok(NicEmbedding {
            graph,
            crossings,
            rotation,
        })
    }

    /// A crossing-free embedding from a planar rotation system of `graph`.
    pub fn planar(graph: Graph, rotation: Rotation) -> Result<Self, EmbeddingError> {
        NicEmbedding::new(graph, Vec::new(), rotation)
    }

    /// Builds an embedding for a graph with a prescribed crossing registry by
    /// computing a planar embedding of the planarization. If the
    /// planarization is triconnected its embedding is unique (up to mirror
    /// image), so this recovers the intended embedding.
    pub fn from_crossings(graph: Graph, crossings: Vec<Crossing>) -> Result<Self, EmbeddingError> {
        let skeleton = NicEmbedding {
            graph: graph.clone(),
            crossings: crossings.clone(),
            rotation: Vec::new(),
        };
        let pg = skeleton.planarization()?;
        let rotation = planarity::test_planarity(&pg)
            .rotation()
            .ok_or_else(|| EmbeddingError::InvalidCrossing("planarization is not planar".into()))?;
        NicEmbedding::new(graph, crossings, rotation)
    }

    /// The base graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The crossing registry in dummy order.
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// The planarization rotation system.
    pub fn rotation(&self) -> &Rotation {
        &self.rotation
    }

    /// Number of original vertices.
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Number of planarization vertices.
    pub fn n_planarization(&self) -> usize {
        self.graph.n() + self.crossings.len()
    }

    /// Planarization id of the dummy of crossing `i`.
    pub fn dummy(&self, i: usize) -> usize {
        self.graph.n() + i
    }

    /// Whether planarization vertex `v` is a crossing dummy.
    pub fn is_dummy(&self, v: usize) -> bool {
        v >= self.graph.n()
    }

    /// Printable name of a planarization vertex (`"7"` or `"x2"`).
    pub fn vertex_name(&self, v: usize) -> String {
        if self.is_dummy(v) {
            format!("x{}", v - self.graph.n())
        } else {
            v.to_string()
        }
    }

    /// Set of normalized crossed edges.
    pub fn crossed_edges(&self) -> BTreeSet<(usize, usize)> {
        self.crossings.iter().flat_map(|c| c.edges()).collect()
    }

    /// The planarization graph. Fails if a crossing references a missing
    /// edge, an edge is crossed twice, or the two crossing edges are adjacent.
    pub fn planarization(&self) -> Result<Graph, EmbeddingError> {
        let n = self.graph.n();
        let mut crossed: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for e in c.edges() {
                if !self.graph.has_edge(e.0, e.1) {
                    return Err(EmbeddingError::InvalidCrossing(format!(
                        "crossing x{i} uses non-edge {e:?}"
                    )));
                }
                if let Some(j) = crossed.insert(e, i) {
                    return Err(EmbeddingError::InvalidCrossing(format!(
                        "edge {e:?} is crossed by x{j} and x{i}"
                    )));
                }
            }
            if c.vertex_set().len() != 4 {
                return Err(EmbeddingError::InvalidCrossing(format!(
                    "crossing x{i} joins adjacent edges"
                )));
            }
        }
        let mut edges: Vec<(usize, usize)> = self
            .graph
            .edges()
            .iter()
            .copied()
            .filter(|e| !crossed.contains_key(e))
            .collect();
        for (i, c) in self.crossings.iter().enumerate() {
            for x in c.endpoints() {
                edges.push((x, n + i));
            }
        }
        Ok(Graph::new(n + self.crossings.len(), &edges)?)
    }

    /// Serializes to the interchange JSON value. Rotation lists are rotated
    /// so that their smallest id comes first, which keeps output canonical.
    pub fn to_json(&self) -> Value {
        let n = self.graph.n();
        let name = |v: usize| -> Value {
            if v >= n {
                Value::String(format!("x{}", v - n))
            } else {
                json!(v)
            }
        };
        let mut rotations = Map::new();
        for (v, r) in self.rotation.iter().enumerate() {
            let start = r
                .iter()
                .enumerate()
                .min_by_key(|(_, &w)| w)
                .map(|(i, _)| i)
                .unwrap_or(0);
            let list: Vec<Value> = (0..r.len())
                .map(|i| name(r[(start + i) % r.len()]))
                .collect();
            let key = if v >= n {
                format!("x{}", v - n)
            } else {
                v.to_string()
            };
            rotations.insert(key, Value::Array(list));
        }
        let crossings: Vec<Value> = self
            .crossings
            .iter()
            .map(|c| json!({ "pair": [[c.first.0, c.first.1], [c.second.0, c.second.1]] }))
            .collect();
        let edges: Vec<Value> = self
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| json!([u, v]))
            .collect();
        json!({ "n": n, "edges": edges, "crossings": crossings, "rotations": rotations })
    }

    /// Serializes to a single-line JSON string with sorted keys.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("JSON values always serialize")
    }

    /// Parses the interchange JSON. Rotation entries may be omitted for
    /// isolated vertices.
    pub fn from_json_str(s: &str) -> Result<Self, EmbeddingError> {
        let v: Value = serde_json::from_str(s).map_err(|e| EmbeddingError::Json(e.to_string()))?;
        Self::from_json(&v)
    }

    /// Decodes an already-parsed JSON value.
    pub fn from_json(v: &Value) -> Result<Self, EmbeddingError> {
        let bad = |m: &str| EmbeddingError::Json(m.to_string());
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field \"n\""))? as usize;
        let pair = |p: &Value| -> Result<(usize, usize), EmbeddingError> {
            let a = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("expected a pair [u, v]"))?;
            let u = a[0]
                .as_u64()
                .ok_or_else(|| bad("vertex ids must be integers"))? as usize;
            let w = a[1]
                .as_u64()
                .ok_or_else(|| bad("vertex ids must be integers"))? as usize;
            Ok((u, w))
        };
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field \"edges\""))?
            .iter()
            .map(pair)
            .collect::<Result<Vec<_>, _>>()?;
        let graph = Graph::new(n, &edges)?;
        let mut crossings = Vec::new();
        for c in v
            .get("crossings")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field \"crossings\""))?
        {
            let p = c
                .get("pair")
                .and_then(Value::as_array)
                .filter(|p| p.len() == 2);
            let p = p.ok_or_else(|| bad("crossing needs \"pair\": [[a,c],[b,d]]"))?;
            crossings.push(Crossing::new(pair(&p[0])?, pair(&p[1])?));
        }
        let np = n + crossings.len();
        let id = |x: &Value| -> Result<usize, EmbeddingError> {
            let r = match x {
                Value::Number(k) => k.as_u64().map(|k| k as usize).filter(|&k| k < n),
                Value::String(s) => parse_vertex_name(s, n).filter(|&k| k < np),
                _ => None,
            };
            r.ok_or_else(|| EmbeddingError::Json(format!("unknown vertex {x}")))
        };
        let mut rotation = vec![Vec::new(); np];
        let rots = v
            .get("rotations")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing object \"rotations\""))?;
        for (key, list) in rots {
            let vtx = id(&Value::String(key.clone()))?;
            let list = list
                .as_array()
                .ok_or_else(|| bad("rotation entries must be arrays"))?;
            rotation[vtx] = list.iter().map(id).collect::<Result<Vec<_>, _>>()?;
        }
        NicEmbedding::new(graph, crossings, rotation)
    }
}

fn parse_vertex_name(s: &str, n: usize) -> Option<usize> {
    if let Some(rest) = s.strip_prefix('x') {
        rest.parse::<usize>().ok().map(|i| n + i)
    } else {
        s.parse::<usize>().ok().filter(|&k| k < n)
    }
}

/// Dart bookkeeping for a rotation system: dart `off[v] + i` is
/// `v → rot[v][i]`.
struct Darts {
    off: Vec<usize>,
    tail: Vec<usize>,
    head: Vec<usize>,
    twin: Vec<usize>,
}

impl Darts {
    fn new(rot: &Rotation) -> Result<Self, EmbeddingError> {
        let mut off = Vec::with_capacity(rot.len() + 1);
        let mut tail = Vec::new();
        let mut head = Vec::new();
        off.push(0);
        for (v, r) in rot.iter().enumerate() {
            for &w in r {
                tail.push(v);
                head.push(w);
            }
            off.push(tail.len());
        }
        let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(tail.len());
        for d in 0..tail.len() {
            if index.insert((tail[d], head[d]), d).is_some() {
                return Err(EmbeddingError::InvalidRotation(format!(
                    "vertex {} lists neighbor {} twice",
                    tail[d], head[d]
                )));
            }
        }
        let mut twin = vec![0; tail.len()];
        for d in 0..tail.len() {
            twin[d] = *index.get(&(head[d], tail[d])).ok_or_else(|| {
                EmbeddingError::InvalidRotation(format!(
                    "{} lists {} but not vice versa",
                    tail[d], head[d]
                ))
            })?;
        }
        Ok(Darts {
            off,
            tail,
            head,
            twin,
        })
    }

    /// Next dart along the face of `d`.
    fn next(&self, d: usize) -> usize {
        let t = self.twin[d];
        let v = self.head[d];
        let deg = self.off[v + 1] - self.off[v];
        let j = t - self.off[v];
        self.off[v] + (j + 1) % deg
    }
}

/// Traces the faces of a rotation system (no consistency check against a graph).
pub fn faces_of_rotation(rot: &Rotation) -> Result<FaceMap, EmbeddingError> {
    let darts = Darts::new(rot)?;
    let mut face_of = vec![usize::MAX; darts.tail.len()];
    let mut faces = Vec::new();
    let mut dart_face = HashMap::with_capacity(darts.tail.len());
    for s in 0..darts.tail.len() {
        if face_of[s] != usize::MAX {
            continue;
        }
        let f = faces.len();
        let mut corners = Vec::new();
        let mut d = s;
        while face_of[d] == usize::MAX {
            face_of[d] = f;
            dart_face.insert((darts.tail[d], darts.head[d]), f);
            corners.push(darts.tail[d]);
            d = darts.next(d);
        }
        if d != s {
            return Err(EmbeddingError::InvalidRotation(
                "face walk is not a permutation".into(),
            ));
        }
        faces.push(Face { corners });
    }
    Ok(FaceMap { faces, dart_face })
}

/// Checks that `rot` lists exactly the neighbors of every vertex of `g`.
pub fn rotation_matches(g: &Graph, rot: &Rotation) -> Result<(), EmbeddingError> {
    if rot.len() != g.n() {
        return Err(EmbeddingError::InvalidRotation(format!(
            "{} lists for {} vertices",
            rot.len(),
            g.n()
        )));
    }
    for v in 0..g.n() {
        let mut r = rot[v].clone();
        r.sort_unstable();
        if r != g.neighbors(v) {
            return Err(EmbeddingError::InvalidRotation(format!(
                "rotation of vertex {v} does not match its neighborhood"
            )));
        }
    }
    Ok(())
}

/// Traces all faces of the planarization and checks Euler's formula for the
/// sphere (`n_p − m_p + f = 2`).
pub fn trace_faces(emb: &NicEmbedding) -> Result<FaceMap, EmbeddingError> {
    let pg = emb.planarization()?;
    rotation_matches(&pg, emb.rotation())?;
    let fm = faces_of_rotation(emb.rotation())?;
    let (n, m, f) = (pg.n(), pg.m(), fm.faces.len());
    // An isolated single vertex is the sphere with one face.
    let f_eff = if m == 0 { f + n } else { f };
    if !pg.is_connected() || n as i64 - m as i64 + f_eff as i64 != 2 {
        return Err(EmbeddingError::NonSphericalEmbedding { n, m, faces: f });
    }
    Ok(fm)
}

/// Checks the crossing registry and the embedding invariants: crossing
/// edges exist and are independent, every edge is crossed at most once, two
/// crossings share at most one endpoint, the rotation covers the
/// planarization, dummies alternate, and the planarization is spherical.
pub fn verify_nic(emb: &NicEmbedding) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let g = emb.graph();
    let mut crossed: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, c) in emb.crossings().iter().enumerate() {
        let x = emb.dummy(i);
        for e in c.edges() {
            if !g.has_edge(e.0, e.1) {
                rep.push(
                    "crossing-edge-exists",
                    format!("x{i} crosses non-edge {e:?}"),
                    vec![x, e.0, e.1],
                );
            }
            if let Some(j) = crossed.insert(e, i) {
                rep.push(
                    "one-crossing-per-edge",
                    format!("edge {e:?} is crossed by x{j} and x{i}"),
                    vec![e.0, e.1],
                );
            }
        }
        if c.vertex_set().len() != 4 {
            rep.push(
                "crossing-independent",
                format!("the edges crossing at x{i} share an endpoint"),
                vec![x],
            );
        }
    }
    // Two crossings share two endpoints iff they share a vertex pair.
    let sets: Vec<Vec<usize>> = emb
        .crossings()
        .iter()
        .map(|c| c.vertex_set().into_iter().collect())
        .collect();
    let mut by_pair: HashMap<(usize, usize), usize> = HashMap::new();
    let mut reported = BTreeSet::new();
    for (j, s) in sets.iter().enumerate() {
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                match by_pair.insert((s[a], s[b]), j) {
                    Some(i) if i != j && reported.insert((i, j)) => {
                        let shared: Vec<usize> =
                            sets[i].iter().copied().filter(|v| s.contains(v)).collect();
                        rep.push(
                            "nic-sharing",
                            format!("crossings x{i} and x{j} share {} endpoints", shared.len()),
                            shared,
                        );
                    }
                    _ => {}
                }
            }
        }
    }
    if !rep.pass {
        return rep;
    }
    for (i, c) in emb.crossings().iter().enumerate() {
        let x = emb.dummy(i);
        let r = &emb.rotation()[x];
        let [a, cc, b, d] = c.endpoints();
        let ok = r.len() == 4 && {
            let p = |v: usize| r.iter().position(|&w| w == v);
            match (p(a), p(cc), p(b), p(d)) {
                (Some(pa), Some(pc), Some(pb), Some(pd)) => {
                    (pa + 2) % 4 == pc && (pb + 2) % 4 == pd
                }
                _ => false,
            }
        };
        if !ok {
            rep.push(
                "dummy-alternation",
                format!("rotation at x{i} does not alternate the crossing edges"),
                vec![x],
            );
        }
    }
    match trace_faces(emb) {
        Ok(_) => {}
        Err(EmbeddingError::NonSphericalEmbedding { n, m, faces }) => {
            rep.push(
                "euler",
                format!(
                    "n_p - m_p + f = {} (expected 2)",
                    n as i64 - m as i64 + faces as i64
                ),
                vec![],
            );
        }
        Err(e) => rep.push("rotation-consistent", e.to_string(), vec![]),
    }
    rep
}

/// Checks the properties of maximal NIC-planar embeddings: every crossing
/// sits in a kite, every face is a triangle, and the generalized dual obeys
/// the adjacency rules; optionally also the K5 sharing property. Inputs with
/// fewer than five vertices are reported as not applicable.
pub fn verify_maximal_embedding(emb: &NicEmbedding, opts: MaximalityOptions) -> VerificationReport {
    let nic = verify_nic(emb);
    if !nic.pass {
        return nic;
    }
    let mut rep = VerificationReport::new();
    if emb.n() < 5 {
        rep.not_applicable = Some(format!(
            "maximality checks need n >= 5, got n = {}",
            emb.n()
        ));
        return rep;
    }
    let fm = trace_faces(emb).expect("verify_nic succeeded");
    let g = emb.graph();
    for (i, c) in emb.crossings().iter().enumerate() {
        let x = emb.dummy(i);
        let [a, cc, b, d] = c.endpoints();
        for (p, q) in [(a, b), (b, cc), (cc, d), (d, a)] {
            if !g.has_edge(p, q) {
                rep.push(
                    "kite",
                    format!("crossing x{i} lacks the kite edge {p}-{q}"),
                    vec![x, p, q],
                );
            }
        }
        let expected: BTreeSet<BTreeSet<usize>> = [(a, b), (b, cc), (cc, d), (d, a)]
            .iter()
            .map(|&(p, q)| [p, q, x].into_iter().collect())
            .collect();
        let around: BTreeSet<BTreeSet<usize>> = emb.rotation()[x]
            .iter()
            .filter_map(|&y| fm.face_of(x, y))
            .map(|f| &fm.faces[f])
            .filter(|f| f.len() == 3)
            .map(Face::corner_set)
            .collect();
        if around != expected {
            rep.push(
                "kite",
                format!("the faces at x{i} are not the four kite triangles"),
                vec![x, a, b, cc, d],
            );
        }
    }
    for f in &fm.faces {
        if f.len() != 3 {
            rep.push(
                "triangulated",
                format!("face of length {}", f.len()),
                f.corners.clone(),
            );
        }
    }
    if rep.pass {
        match crate::dual::build_dual(emb) {
            Ok(dual) => rep.merge(crate::dual::check_adjacency_rules(&dual, g)),
            Err(e) => rep.push("dual-build", e.to_string(), vec![]),
        }
    }
    if opts.check_k5_sharing {
        rep.merge(check_k5_sharing(emb));
    }
    rep
}

/// All K5 subgraphs of `g`, as sorted 5-tuples (naive enumeration).
pub fn list_k5(g: &Graph) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    for &(a, b) in g.edges() {
        let common: Vec<usize> = g
            .neighbors(a)
            .iter()
            .copied()
            .filter(|&w| w > b && g.has_edge(b, w))
            .collect();
        for i in 0..common.len() {
            for j in i + 1..common.len() {
                if !g.has_edge(common[i], common[j]) {
                    continue;
                }
                for k in j + 1..common.len() {
                    if g.has_edge(common[i], common[k]) && g.has_edge(common[j], common[k]) {
                        out.push([a, b, common[i], common[j], common[k]]);
                    }
                }
            }
        }
    }
    out
}

/// Checks that any two K5 subgraphs whose edges cross each other share at
/// least three vertices.
pub fn check_k5_sharing(emb: &NicEmbedding) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let k5s = list_k5(emb.graph());
    let contains = |k: &[usize; 5], e: (usize, usize)| k.contains(&e.0) && k.contains(&e.1);
    for (i, c) in emb.crossings().iter().enumerate() {
        let [e, f] = c.edges();
        for p in k5s.iter().filter(|k| contains(k, e)) {
            for q in k5s.iter().filter(|k| contains(k, f)) {
                let shared = p.iter().filter(|v| q.contains(v)).count();
                if shared < 3 {
                    let mut w = p.to_vec();
                    w.extend_from_slice(q);
                    rep.push(
                        "k5-sharing",
                        format!("K5s sharing crossing x{i} have only {shared} common vertices"),
                        w,
                    );
                }
            }
        }
    }
    rep
}

/// The base graph minus the lexicographically larger edge of every crossing.
pub fn planar_reduction(emb: &NicEmbedding) -> Graph {
    let drop: Vec<(usize, usize)> = emb
        .crossings()
        .iter()
        .map(|c| {
            let [e, f] = c.edges();
            e.max(f)
        })
        .collect();
    emb.graph().without_edges(&drop)
}

/// The base graph minus both edges of every crossing.
pub fn planar_skeleton(emb: &NicEmbedding) -> Graph {
    let drop: Vec<(usize, usize)> = emb.crossings().iter().flat_map(|c| c.edges()).collect();
    emb.graph().without_edges(&drop)
}

/// The kite embedding of K4 on `0..4` with `0–2` crossing `1–3` (dummy 4).
pub fn kite_k4() -> NicEmbedding {
    let g = crate::graph_core::complete_graph(4);
    let rotation = vec![
        vec![1, 4, 3],
        vec![2, 4, 0],
        vec![3, 4, 1],
        vec![0, 4, 2],
        vec![0, 1, 2, 3],
    ];
    NicEmbedding::new(g, vec![Crossing::new((0, 2), (1, 3))], rotation).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::complete_graph;

    #[test]
    fn kite_faces_and_nic() {
        let k = kite_k4();
        let fm = trace_faces(&k).unwrap();
        assert_eq!(fm.faces.len(), 5);
        let mut lens: Vec<usize> = fm.faces.iter().map(Face::len).collect();
        lens.sort();
        assert_eq!(lens, vec![3, 3, 3, 3, 4]);
        assert!(verify_nic(&k).pass);
        let rep = verify_maximal_embedding(&k, MaximalityOptions::default());
        assert!(rep.pass && rep.not_applicable.is_some());
        assert_eq!(planar_reduction(&k).m(), 5);
        assert_eq!(planar_skeleton(&k).m(), 4);
    }

    #[test]
    fn planar_k4_and_c3() {
        let g = complete_graph(4);
        let rot = planarity::test_planarity(&g).rotation().unwrap();
        let e = NicEmbedding::planar(g, rot).unwrap();
        assert_eq!(trace_faces(&e).unwrap().faces.len(), 4);
        assert_eq!(planar_reduction(&e), *e.graph());
        let c3 = complete_graph(3);
        let e = NicEmbedding::planar(c3, vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(trace_faces(&e).unwrap().faces.len(), 2);
    }

    #[test]
    fn non_alternating_dummy_is_reported() {
        let mut k = kite_k4();
        k.rotation[4] = vec![0, 2, 1, 3];
        let rep = verify_nic(&k);
        assert!(rep.has_rule("dummy-alternation"));
    }

    #[test]
    fn registry_violations() {
        let g = complete_graph(5);
        // Two crossings on the same four vertices share four endpoints.
        let cs = vec![Crossing::new((0, 2), (1, 3)), Crossing::new((0, 1), (2, 3))];
        let e = NicEmbedding::new(g.clone(), cs, vec![Vec::new(); 7]).unwrap();
        assert!(verify_nic(&e).has_rule("nic-sharing"));
        let cs = vec![Crossing::new((0, 2), (1, 3)), Crossing::new((0, 2), (1, 4))];
        let e = NicEmbedding::new(g, cs, vec![Vec::new(); 7]).unwrap();
        assert!(verify_nic(&e).has_rule("one-crossing-per-edge"));
    }

    #[test]
    fn json_round_trip() {
        let k = kite_k4();
        let s = k.to_json_string();
        assert!(s.contains("\"x0\""));
        let back = NicEmbedding::from_json_str(&s).unwrap();
        assert_eq!(back.to_json(), k.to_json());
        assert!(verify_nic(&back).pass);
    }
}
