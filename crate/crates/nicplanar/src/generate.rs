//! Constructors for the extremal NIC-planar families and auxiliary graphs.
//!
//! Every maximal family is described by its faces: *kites* (quadrangles of
//! the planar skeleton whose diagonals cross, listed in cyclic order so that
//! the diagonals are `q0–q2` and `q1–q3`), triangles, and degree-3 vertices
//! stacked into triangles. The graph is read off the faces, and the witness
//! embedding is the (unique) planar embedding of the planarization, which is
//! a triangulation.
//!
//! # Labelings
//!
//! *Ring with `K` blocks* (optimal family): `N = 0`, `u_i = 1 + i` and
//! `l_i = 1 + 2K + i` for `i < 2K`, `M_j = 1 + 4K + j` for `j < K`,
//! `S = 1 + 5K`. Block `j` has triangles `N u_{2j} u_{2j+1}`,
//! `S l_{2j} l_{2j+1}`, `M_j u_{2j+1} l_{2j+1}`, `M_j u_{2j+2} l_{2j+2}` and
//! kites `u_{2j} u_{2j+1} l_{2j+1} l_{2j}`, `N u_{2j+1} M_j u_{2j+2}`,
//! `S l_{2j+1} M_j l_{2j+2}` (indices of `u`, `l` modulo `2K`).
//!
//! *Sparsest family, `k ≥ 3`*: `N = 0`, `S = 1`, `r_j = 2 + j`,
//! `t_j = 2 + k + j`, `b_j = 2 + 2k + j`, `c_j = 2 + 3k + j`,
//! `d_j = 2 + 4k + j`; kite `r_{j−1} t_j r_j b_j`, triangles
//! `N r_{j−1} t_j`, `N t_j r_j`, `S r_{j−1} b_j`, `S b_j r_j`, with `c_j`
//! stacked into `N t_j r_j` and `d_j` into `S r_{j−1} b_j`.
//!
//! The intermediate-density families attach caps to the ring with the `S`
//! side removed; see [`gen_densest_intermediate`].

use std::collections::BTreeSet;

use crate::embedding::{Crossing, NicEmbedding};
use crate::error::GenerateError;
use crate::graph_core::Graph;

/// Which family an instance belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Sparsest maximal NIC-planar graphs (`m = 16k`).
    Sparsest,
    /// Optimal NIC-planar graphs (`m = 18k`).
    Optimal,
    /// Densest graphs for `n = 5k + 2 + i`.
    Intermediate,
    /// Nested triangles with K5s in every band triangle.
    NestedK5,
    /// Optimal base graph with every planar edge fattened by 2-paths.
    RacCounterexample,
    /// Edge-gadget transformation.
    Gadget,
}

impl Family {
    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Family::Sparsest => "sparsest",
            Family::Optimal => "optimal",
            Family::Intermediate => "intermediate",
            Family::NestedK5 => "nested-k5",
            Family::RacCounterexample => "rac",
            Family::Gadget => "gadget",
        }
    }
}

/// Expected vertex, edge and crossing counts of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedCounts {
    /// Vertices.
    pub n: usize,
    /// Edges.
    pub m: usize,
    /// Crossings of the witness embedding.
    pub crossings: usize,
}

/// A generated graph with its witness embedding and expected counts.
#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    /// Family tag.
    pub family: Family,
    /// Family parameter `k`.
    pub k: usize,
    /// Intermediate-density offset `i`, where applicable.
    pub i: Option<usize>,
    /// The graph.
    pub graph: Graph,
    /// Witness embedding.
    pub embedding: Option<NicEmbedding>,
    /// Counts predicted by the family formula.
    pub expected: ExpectedCounts,
}

/// Face description of a maximal embedding.
#[derive(Default)]
struct Faces {
    n: usize,
    kites: Vec<[usize; 4]>,
    triangles: Vec<[usize; 3]>,
    stacked: Vec<(usize, [usize; 3])>,
}

impl Faces {
    fn new(n: usize) -> Self {
        Faces {
            n,
            ..Default::default()
        }
    }

    fn kite(&mut self, q: [usize; 4]) {
        self.kites.push(q);
    }

    fn tri(&mut self, t: [usize; 3]) {
        self.triangles.push(t);
    }

    fn stack(&mut self, c: usize, t: [usize; 3]) {
        self.stacked.push((c, t));
    }

    fn graph_and_crossings(&self) -> (Graph, Vec<Crossing>) {
        let mut e = Vec::new();
        for q in &self.kites {
            for i in 0..4 {
                e.push((q[i], q[(i + 1) % 4]));
            }
            e.push((q[0], q[2]));
            e.push((q[1], q[3]));
        }
        for t in &self.triangles {
            e.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
        }
        for (c, t) in &self.stacked {
            e.extend(t.iter().map(|&v| (*c, v)));
        }
        let g = Graph::from_edges_dedup(self.n, e);
        let crossings = self
            .kites
            .iter()
            .map(|q| Crossing::new((q[0], q[2]), (q[1], q[3])))
            .collect();
        (g, crossings)
    }

    fn build(
        &self,
        family: Family,
        k: usize,
        i: Option<usize>,
        expected: ExpectedCounts,
    ) -> GeneratedInstance {
        let (graph, crossings) = self.graph_and_crossings();
        assert_eq!(
            (graph.n(), graph.m(), crossings.len()),
            (expected.n, expected.m, expected.crossings),
            "{} construction does not match its counts",
            family.name()
        );
        let embedding = NicEmbedding::from_crossings(graph.clone(), crossings)
            .expect("family planarizations are planar");
        GeneratedInstance {
            family,
            k,
            i,
            graph,
            embedding: Some(embedding),
            expected,
        }
    }
}

/// Vertex labels of the ring with `K` blocks.
#[derive(Clone, Copy)]
struct Ring {
    big_k: usize,
}

impl Ring {
    const N: usize = 0;
    fn u(self, i: usize) -> usize {
        1 + i % (2 * self.big_k)
    }
    fn l(self, i: usize) -> usize {
        1 + 2 * self.big_k + i % (2 * self.big_k)
    }
    fn m(self, j: usize) -> usize {
        1 + 4 * self.big_k + j % self.big_k
    }
    fn s(self) -> usize {
        1 + 5 * self.big_k
    }

    /// Faces of the upper part (everything not incident to `S`).
    fn body(self, f: &mut Faces) {
        for j in 0..self.big_k {
            f.tri([Self::N, self.u(2 * j), self.u(2 * j + 1)]);
            f.tri([self.m(j), self.u(2 * j + 1), self.l(2 * j + 1)]);
            f.tri([self.m(j), self.u(2 * j + 2), self.l(2 * j + 2)]);
            f.kite([
                self.u(2 * j),
                self.u(2 * j + 1),
                self.l(2 * j + 1),
                self.l(2 * j),
            ]);
            f.kite([Self::N, self.u(2 * j + 1), self.m(j), self.u(2 * j + 2)]);
        }
    }

    /// Faces incident to `S`.
    fn bottom(self, f: &mut Faces) {
        let s = self.s();
        for j in 0..self.big_k {
            f.tri([s, self.l(2 * j), self.l(2 * j + 1)]);
            f.kite([s, self.l(2 * j + 1), self.m(j), self.l(2 * j + 2)]);
        }
    }
}

/// Optimal NIC-planar graph with `n = 5k + 2`, `m = 18k` and `3k` crossings.
pub fn gen_optimal(k: usize) -> Result<GeneratedInstance, GenerateError> {
    if k < 2 {
        return Err(GenerateError::KTooSmall { k, min: 2 });
    }
    let ring = Ring { big_k: k };
    let mut f = Faces::new(5 * k + 2);
    ring.body(&mut f);
    ring.bottom(&mut f);
    Ok(f.build(
        Family::Optimal,
        k,
        None,
        ExpectedCounts {
            n: 5 * k + 2,
            m: 18 * k,
            crossings: 3 * k,
        },
    ))
}

/// Sparsest maximal NIC-planar graph with `n = 5k + 2`, `m = 16k` and `k`
/// crossings.
///
/// For `k = 1` the graph has hub `0` adjacent to `1..=6`, kite `1 4 2 3`
/// and vertices `5`, `6` stacked into `0 3 1` and `0 4 2`. For `k = 2` the
/// graph has kites `0 1 2 3` and `7 4 11 10`. From `k = 3` on, the graph is
/// the ring described in the module documentation.
pub fn gen_sparsest(k: usize) -> Result<GeneratedInstance, GenerateError> {
    let expected = ExpectedCounts {
        n: 5 * k + 2,
        m: 16 * k,
        crossings: k,
    };
    let mut f = Faces::new(5 * k + 2);
    match k {
        0 => return Err(GenerateError::KTooSmall { k, min: 1 }),
        1 => {
            f.kite([1, 4, 2, 3]);
            for t in [[0, 3, 1], [0, 1, 4], [0, 4, 2], [0, 2, 3]] {
                f.tri(t);
            }
            f.stack(5, [0, 3, 1]);
            f.stack(6, [0, 4, 2]);
        }
        2 => {
            f.kite([0, 1, 2, 3]);
            f.kite([7, 4, 11, 10]);
            for t in [
                [3, 2, 4],
                [2, 1, 5],
                [1, 0, 6],
                [0, 3, 7],
                [3, 4, 8],
                [4, 2, 9],
                [2, 5, 10],
                [5, 1, 10],
                [1, 6, 7],
                [6, 0, 7],
                [7, 3, 8],
                [8, 4, 7],
                [4, 9, 11],
                [9, 2, 11],
                [2, 10, 11],
                [10, 1, 7],
            ] {
                f.tri(t);
            }
        }
        _ => {
            let (nn, ss) = (0, 1);
            let r = |j: usize| 2 + j % k;
            let t = |j: usize| 2 + k + j;
            let b = |j: usize| 2 + 2 * k + j;
            for j in 0..k {
                let prev = r(j + k - 1);
                f.kite([prev, t(j), r(j), b(j)]);
                f.tri([nn, prev, t(j)]);
                f.tri([nn, t(j), r(j)]);
                f.tri([ss, prev, b(j)]);
                f.tri([ss, b(j), r(j)]);
                f.stack(2 + 3 * k + j, [nn, t(j), r(j)]);
                f.stack(2 + 4 * k + j, [ss, prev, b(j)]);
            }
        }
    }
    Ok(f.build(Family::Sparsest, k, None, expected))
}

/// Densest NIC-planar graphs with `n = 5k + 2 + i` vertices and
/// `m = ⌊18(n − 2)/5⌋` edges.
///
/// * `i = 1`, `k ≥ 2`: the optimal graph plus vertex `5k + 2` stacked into
///   the triangle `N u_0 u_1`.
/// * `i = 2`, `k ≥ 3`: the ring body with `K = k` blocks plus
///   `x_0, x_1, x_2 = 5k + 1 ..= 5k + 3` closing the lower side.
/// * `i = 3`, `k ≥ 2`: the ring body with `K = k` plus
///   `x_0 ..= x_3 = 5k + 1 ..= 5k + 4`.
/// * `i = 4`, `k ≥ 1`: the ring with `K = k + 1` blocks where `N` is
///   identified with `M_{K−1}` (degenerate faces dropped) and all labels
///   shifted down by one.
pub fn gen_densest_intermediate(k: usize, i: usize) -> Result<GeneratedInstance, GenerateError> {
    let n = 5 * k + 2 + i;
    let bad = |msg: String| Err(GenerateError::InvalidParameters(msg));
    let extra = match i {
        1 => 3,
        2 => 7,
        3 => 10,
        4 => 14,
        _ => return bad(format!("i = {i} is outside 1..=4")),
    };
    let min_k = match i {
        1 | 3 => 2,
        2 => 3,
        _ => 1,
    };
    if k < min_k {
        return bad(format!("i = {i} needs k >= {min_k}, got k = {k}"));
    }
    let expected = ExpectedCounts {
        n,
        m: 18 * k + extra,
        crossings: 3 * k + if i == 4 { 2 } else { i.min(2) },
    };
    let mut f = Faces::new(n);
    match i {
        1 => {
            let ring = Ring { big_k: k };
            ring.body(&mut f);
            ring.bottom(&mut f);
            f.stack(5 * k + 2, [Ring::N, ring.u(0), ring.u(1)]);
        }
        2 => {
            let ring = Ring { big_k: k };
            ring.body(&mut f);
            let (l, m) = (|i| ring.l(i), |j| ring.m(j));
            let (x0, x1, x2) = (5 * k + 1, 5 * k + 2, 5 * k + 3);
            f.tri([l(0), l(1), x0]);
            f.tri([m(0), l(2), x1]);
            f.tri([x0, x1, l(2 * k - 1)]);
            f.kite([l(1), m(0), x1, x0]);
            f.kite([l(2 * k - 1), m(k - 1), l(0), x0]);
            f.kite([x1, l(2), x2, l(2 * k - 1)]);
            for j in 1..k {
                f.tri([l(2 * j), l(2 * j + 1), x2]);
            }
            for j in 1..k - 1 {
                f.kite([l(2 * j + 1), m(j), l(2 * j + 2), x2]);
            }
        }
        3 => {
            let ring = Ring { big_k: k };
            ring.body(&mut f);
            let (l, m) = (|i| ring.l(i), |j| ring.m(j));
            let (x0, x1, x2, x3) = (5 * k + 1, 5 * k + 2, 5 * k + 3, 5 * k + 4);
            f.tri([l(0), l(1), x0]);
            f.tri([l(1), m(0), x1]);
            f.tri([m(0), l(2), x2]);
            f.tri([x2, l(2), x3]);
            f.tri([l(2), x1, x3]);
            f.kite([x0, l(1), x1, l(2)]);
            f.kite([x1, m(0), x2, x3]);
            for j in 1..k {
                f.tri([l(2 * j), l(2 * j + 1), x0]);
                f.kite([l(2 * j + 1), m(j), l(2 * j + 2), x0]);
            }
        }
        _ => {
            let ring = Ring { big_k: k + 1 };
            let hub = ring.m(k);
            let relabel = |v: usize| if v == Ring::N { hub - 1 } else { v - 1 };
            let mut full = Faces::new(0);
            ring.body(&mut full);
            ring.bottom(&mut full);
            for q in &full.kites {
                let q = q.map(relabel);
                if q.iter().collect::<BTreeSet<_>>().len() == 4 {
                    f.kite(q);
                }
            }
            for t in &full.triangles {
                let t = t.map(relabel);
                if t.iter().collect::<BTreeSet<_>>().len() == 3 {
                    f.tri(t);
                }
            }
        }
    }
    let expected = ExpectedCounts {
        crossings: f.kites.len(),
        ..expected
    };
    Ok(f.build(Family::Intermediate, k, Some(i), expected))
}

/// The fixture used for kite flips: the `i = 3`, `k = 2` intermediate
/// graph. Its triangles `M_0 x_2 l_2` and `l_2 x_2 x_3` are adjacent only to
/// the kite `x_1 M_0 x_2 x_3`, whose crossing edge `M_0 x_3` is their
/// tetrahedral edge.
pub fn gen_flip_fixture() -> GeneratedInstance {
    gen_densest_intermediate(2, 3).expect("valid parameters")
}

/// Vertex labels of the nested-triangle graph with `k` layers.
fn layer(i: usize) -> [usize; 3] {
    [3 * i, 3 * i + 1, 3 * i + 2]
}

/// The six band triangles between layers `i − 1` and `i`, in cyclic order
/// around the band, each with its two non-layer sides. Triangle `j` has
/// sides `E_j` and `E_{j+1}` where
/// `E = [u w', u u', v u', v v', w v', w w']` (primes denote layer `i − 1`).
fn band(i: usize) -> [([usize; 3], [(usize, usize); 2]); 6] {
    let [u, v, w] = layer(i);
    let [u1, v1, w1] = layer(i - 1);
    let e = [(u, w1), (u, u1), (v, u1), (v, v1), (w, v1), (w, w1)];
    let tris = [
        [u, u1, w1],
        [u, v, u1],
        [v, u1, v1],
        [v, w, v1],
        [w, v1, w1],
        [w, u, w1],
    ];
    std::array::from_fn(|j| (tris[j], [e[j], e[(j + 1) % 6]]))
}

/// Nested triangles `T_k` (layers `u_i = 3i`, `v_i = 3i + 1`, `w_i = 3i + 2`)
/// where each of the `6(k − 1)` band triangles receives two vertices `a, b`
/// forming a K5 with it. The triangle `j` of band `i` uses `a = 3k + 2t`,
/// `b = a + 1` with `t = 6(i − 1) + j`.
///
/// `selection` has one bit per band: bit `i − 1` decides whether every
/// band triangle puts its kite on its first or its second non-layer side.
/// Each choice uses every non-layer edge exactly once, so two kites never
/// share an edge. The embedding for the selection is returned with the graph.
pub fn gen_nested_k5_variant(k: usize, selection: u64) -> Result<GeneratedInstance, GenerateError> {
    if k < 2 {
        return Err(GenerateError::KTooSmall { k, min: 2 });
    }
    if k > 64 || (k - 1 < 64 && selection >> (k - 1) != 0) {
        return Err(GenerateError::InvalidParameters(format!(
            "selection {selection} out of range for k = {k}"
        )));
    }
    let n = 15 * k - 12;
    let mut e = Vec::new();
    for i in 0..k {
        let [u, v, w] = layer(i);
        e.extend([(u, v), (v, w), (u, w)]);
    }
    let mut crossings = Vec::new();
    for i in 1..k {
        let option = (selection >> (i - 1)) & 1;
        for (j, (tri, sides)) in band(i).into_iter().enumerate() {
            let a = 3 * k + 2 * (6 * (i - 1) + j);
            let b = a + 1;
            for &x in &tri {
                e.push((x, a));
                e.push((x, b));
            }
            e.push((a, b));
            e.push(sides[0]);
            // Kite x y b a: x–b crosses y–a.
            let (x, y) = sides[option as usize];
            crossings.push(Crossing::new((x, b), (y, a)));
        }
    }
    let graph = Graph::from_edges_dedup(n, e);
    let expected = ExpectedCounts {
        n,
        m: 51 * k - 48,
        crossings: 6 * (k - 1),
    };
    assert_eq!(
        (graph.n(), graph.m(), crossings.len()),
        (expected.n, expected.m, expected.crossings)
    );
    let embedding =
        NicEmbedding::from_crossings(graph.clone(), crossings).expect("planarization is planar");
    Ok(GeneratedInstance {
        family: Family::NestedK5,
        k,
        i: None,
        graph,
        embedding: Some(embedding),
        expected,
    })
}

/// The nested-K5 graph with the first selection, plus all `2^(k−1)`
/// embedding variants (one per selection, in selection order).
pub fn gen_nested_k5(k: usize) -> Result<(GeneratedInstance, Vec<NicEmbedding>), GenerateError> {
    if k < 2 {
        return Err(GenerateError::KTooSmall { k, min: 2 });
    }
    if k > 21 {
        return Err(GenerateError::InvalidParameters(format!(
            "k = {k} has too many variants to list"
        )));
    }
    let first = gen_nested_k5_variant(k, 0)?;
    let mut variants = Vec::with_capacity(1 << (k - 1));
    for s in 0..(1u64 << (k - 1)) {
        variants.push(
            gen_nested_k5_variant(k, s)?
                .embedding
                .expect("variants carry embeddings"),
        );
    }
    Ok((first, variants))
}

/// Number of 2-paths added along every planar edge by [`gen_rac_counterexample`].
pub const FAT_EDGE_PATHS: usize = 7;

/// Substitutes a path `p – s – q` for the planarization segment `p – q`.
fn subdivide(rot: &mut [Vec<usize>], p: usize, q: usize, s: usize) {
    let i = rot[p].iter().position(|&x| x == q).expect("segment exists");
    rot[p][i] = s;
    let j = rot[q].iter().position(|&x| x == p).expect("segment exists");
    rot[q][j] = s;
    rot[s] = vec![p, q];
}

/// Adds 2-paths `p – h – q` for every `h` in `mids`, drawn next to the
/// segment `p – q` on one side.
fn add_parallel_paths(rot: &mut [Vec<usize>], p: usize, q: usize, mids: &[usize]) {
    let i = rot[p].iter().position(|&x| x == q).expect("segment exists");
    for (t, &h) in mids.iter().enumerate() {
        rot[p].insert(i + 1 + t, h);
    }
    let j = rot[q].iter().position(|&x| x == p).expect("segment exists");
    for &h in mids {
        rot[q].insert(j, h);
    }
    for &h in mids {
        rot[h] = vec![p, q];
    }
}

/// The optimal graph with `k = 2` (six kites, eight triangles) where every
/// planar edge of its embedding is fattened by seven 2-paths. New vertices
/// are numbered from 12 on, seven per planar edge in edge order.
pub fn gen_rac_counterexample() -> GeneratedInstance {
    let base = gen_optimal(2).expect("k = 2 is valid");
    let emb = base.embedding.expect("optimal instances carry embeddings");
    let g = emb.graph();
    let crossed = emb.crossed_edges();
    let planar: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !crossed.contains(e))
        .collect();
    let n0 = g.n();
    let n = n0 + FAT_EDGE_PATHS * planar.len();
    let c = emb.crossings().len();
    // Planarization ids: 0..n original and new vertices, then dummies.
    let remap = |v: usize| if v >= n0 { v - n0 + n } else { v };
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n + c];
    for (v, r) in emb.rotation().iter().enumerate() {
        rot[remap(v)] = r.iter().map(|&w| remap(w)).collect();
    }
    let mut edges = g.edges().to_vec();
    for (t, &(u, v)) in planar.iter().enumerate() {
        let mids: Vec<usize> = (0..FAT_EDGE_PATHS)
            .map(|s| n0 + FAT_EDGE_PATHS * t + s)
            .collect();
        add_parallel_paths(&mut rot, u, v, &mids);
        for &h in &mids {
            edges.push((u, h));
            edges.push((h, v));
        }
    }
    let graph = Graph::from_edges_dedup(n, edges);
    let m = g.m() + 2 * FAT_EDGE_PATHS * planar.len();
    assert_eq!((graph.n(), graph.m()), (n, m));
    let embedding =
        NicEmbedding::new(graph.clone(), emb.crossings().to_vec(), rot).expect("well-formed");
    GeneratedInstance {
        family: Family::RacCounterexample,
        k: 2,
        i: None,
        graph,
        embedding: Some(embedding),
        expected: ExpectedCounts { n, m, crossings: c },
    }
}

/// Vertices added per edge by [`np_gadget_transform`].
pub const GADGET_VERTICES: usize = 6;
/// Edges per gadget (replacing one original edge).
pub const GADGET_EDGES: usize = 11;

/// Designated vertices of the gadget replacing edge number `e` (in
/// `Graph::edges` order) of a graph with `n` vertices: `(a_uv, a_vu)`.
pub fn gadget_designated(n: usize, e: usize) -> (usize, usize) {
    (n + GADGET_VERTICES * e, n + GADGET_VERTICES * e + 1)
}

/// Replaces every edge `u v` (with `u < v`) by the path
/// `u – a_uv – a_vu – v` and adds two further 2-paths between `u` and
/// `a_uv` and two between `a_vu` and `v`. The middle edge `a_uv – a_vu` is
/// the designated edge that may be crossed; the doubled end segments make
/// the ends costly to cross. Gadget `e` uses vertices
/// `n + 6e ..= n + 6e + 5`: `a_uv`, `a_vu`, then the four path midpoints.
pub fn np_gadget_transform(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::with_capacity(GADGET_EDGES * g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = gadget_designated(n, e);
        let h = a + 2;
        edges.extend([(u, a), (a, b), (b, v)]);
        edges.extend([(u, h), (h, a), (u, h + 1), (h + 1, a)]);
        edges.extend([(b, h + 2), (h + 2, v), (b, h + 3), (h + 3, v)]);
    }
    Graph::from_edges_dedup(n + GADGET_VERTICES * g.m(), edges)
}

/// Embeds the gadget graph of `emb.graph()` following `emb`: every gadget
/// runs along its original edge, and each crossing of `emb` becomes a
/// crossing of the two designated edges. No other edge is crossed.
pub fn np_gadget_embedding(emb: &NicEmbedding) -> Result<NicEmbedding, GenerateError> {
    let g = emb.graph();
    let n = g.n();
    let c = emb.crossings().len();
    let gadget = np_gadget_transform(g);
    let big_n = gadget.n();
    let remap = |v: usize| if v >= n { v - n + big_n } else { v };
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); big_n + c];
    for (v, r) in emb.rotation().iter().enumerate() {
        rot[remap(v)] = r.iter().map(|&w| remap(w)).collect();
    }
    let mut dummy_of = std::collections::HashMap::new();
    for (i, cr) in emb.crossings().iter().enumerate() {
        for e in cr.edges() {
            dummy_of.insert(e, big_n + i);
        }
    }
    let mut crossings = vec![None; c];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = gadget_designated(n, e);
        let h = a + 2;
        match dummy_of.get(&(u, v)) {
            Some(&x) => {
                subdivide(&mut rot, u, x, a);
                subdivide(&mut rot, x, v, b);
                let i = x - big_n;
                let cr = emb.crossings()[i];
                let [e1, _] = cr.edges();
                let slot = crossings[i].get_or_insert(((usize::MAX, 0), (usize::MAX, 0)));
                if (u, v) == e1 {
                    slot.0 = (a, b);
                } else {
                    slot.1 = (a, b);
                }
            }
            None => {
                subdivide(&mut rot, u, v, a);
                subdivide(&mut rot, a, v, b);
            }
        }
        add_parallel_paths(&mut rot, u, a, &[h, h + 1]);
        add_parallel_paths(&mut rot, b, v, &[h + 2, h + 3]);
    }
    let crossings: Vec<Crossing> = crossings
        .into_iter()
        .map(|s| s.map(|(p, q)| Crossing::new(p, q)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            GenerateError::InvalidParameters("crossing references unknown edges".into())
        })?;
    NicEmbedding::new(gadget, crossings, rot)
        .map_err(|e| GenerateError::InvalidParameters(e.to_string()))
}

/// K5 with its 1-planar embedding: kite on `0 1 2 3` (crossing `0–2`,
/// `1–3`) and vertex `4` outside.
pub fn k5_one_planar() -> NicEmbedding {
    let g = crate::graph_core::complete_graph(5);
    NicEmbedding::from_crossings(g, vec![Crossing::new((0, 2), (1, 3))])
        .expect("planar planarization")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_formulas() {
        let g = gen_optimal(5).unwrap();
        assert_eq!((g.graph.n(), g.graph.m()), (27, 90));
        assert_eq!(gen_sparsest(1).unwrap().graph.m(), 16);
        assert_eq!(gen_sparsest(3).unwrap().graph.m(), 48);
        assert_eq!(gen_densest_intermediate(2, 1).unwrap().graph.m(), 39);
        assert_eq!(gen_densest_intermediate(4, 2).unwrap().graph.m(), 79);
        assert_eq!(gen_densest_intermediate(2, 4).unwrap().graph.m(), 50);
        assert_eq!(gen_nested_k5_variant(2, 0).unwrap().graph.m(), 54);
        assert!(matches!(
            gen_optimal(1),
            Err(GenerateError::KTooSmall { .. })
        ));
        assert!(gen_densest_intermediate(2, 5).is_err());
    }

    #[test]
    fn gadget_sizes() {
        let g = np_gadget_transform(&crate::graph_core::complete_graph(3));
        assert_eq!((g.n(), g.m()), (3 + 18, 33));
        let empty = Graph::new(4, &[]).unwrap();
        assert_eq!(np_gadget_transform(&empty), empty);
    }
}
