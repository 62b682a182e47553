//! Planarity testing with embedding extraction (left-right criterion).
//!
//! The implementation follows the left-right planarity test of de Fraysseix
//! and Rosenstiehl in the formulation of Brandes ("The Left-Right Planarity
//! Test"): a DFS orientation computes lowpoints and a nesting order, a second
//! DFS checks the LR-partition constraints with a stack of conflict pairs, and
//! a third DFS assembles the rotation system. All three traversals use explicit
//! stacks, so deep DFS trees (long paths in graphs with tens of thousands of
//! vertices) do not overflow the call stack.
//!
//! Apart from sorting adjacency lists by nesting depth (`O(m log m)`), the
//! test runs in linear time.

use crate::graph_core::Graph;

/// A combinatorial embedding: for every vertex, its neighbors in cyclic order.
pub type Rotation = Vec<Vec<usize>>;

/// Outcome of [`test_planarity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanarityResult {
    /// The graph is planar; the rotation system is a planar embedding.
    Planar(Rotation),
    /// The graph is not planar (no Kuratowski witness is extracted).
    NonPlanar,
}

impl PlanarityResult {
    /// Whether the result is [`PlanarityResult::Planar`].
    pub fn is_planar(&self) -> bool {
        matches!(self, PlanarityResult::Planar(_))
    }

    /// The rotation system, if planar.
    pub fn rotation(self) -> Option<Rotation> {
        match self {
            PlanarityResult::Planar(r) => Some(r),
            PlanarityResult::NonPlanar => None,
        }
    }
}

/// Decides planarity of `g` and returns a planar rotation system when one exists.
///
/// Disconnected inputs are handled component by component; each component's
/// rotation is independent.
pub fn test_planarity(g: &Graph) -> PlanarityResult {
    if g.n() > 2 && g.m() > 3 * g.n() - 6 {
        return PlanarityResult::NonPlanar;
    }
    let mut lr = LrState::new(g);
    match lr.run() {
        true => PlanarityResult::Planar(lr.rotation()),
        false => PlanarityResult::NonPlanar,
    }
}

/// Planarity decision only.
pub fn is_planar(g: &Graph) -> bool {
    test_planarity(g).is_planar()
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    const EMPTY: ConflictPair = ConflictPair {
        left: Interval::EMPTY,
        right: Interval::EMPTY,
    };

    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// State of one run. Edges are identified by their index in `g.edges()`;
/// after orientation `src[e] → dst[e]` is the DFS direction.
struct LrState<'a> {
    g: &'a Graph,
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    roots: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    /// Outgoing oriented edges per vertex, later sorted by nesting depth.
    out: Vec<Vec<usize>>,
    reference: Vec<usize>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
    // Embedding: circular doubly-linked rings of darts around each vertex.
    // Dart 2e is src[e]→dst[e], dart 2e+1 is dst[e]→src[e].
    cw: Vec<usize>,
    ccw: Vec<usize>,
    present: Vec<bool>,
    leftmost: Vec<usize>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
    // Per-phase DFS scratch; every vertex and edge belongs to exactly one
    // component, so these need resetting only between phases.
    scratch_ind: Vec<usize>,
    scratch_skip: Vec<bool>,
}

impl<'a> LrState<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        let m = g.m();
        LrState {
            g,
            src: vec![NONE; m],
            dst: vec![NONE; m],
            oriented: vec![false; m],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            roots: Vec::new(),
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            out: vec![Vec::new(); n],
            reference: vec![NONE; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![NONE; m],
            cw: vec![NONE; 2 * m],
            ccw: vec![NONE; 2 * m],
            present: vec![false; 2 * m],
            leftmost: vec![NONE; n],
            left_ref: vec![NONE; n],
            right_ref: vec![NONE; n],
            scratch_ind: vec![0; n],
            scratch_skip: vec![false; m],
        }
    }

    fn edge_id(&self, u: usize, v: usize) -> usize {
        self.g.edge_index(u, v).expect("edge of the input graph")
    }

    fn run(&mut self) -> bool {
        let n = self.g.n();
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.dfs_orientation(v);
            }
        }
        for v in 0..n {
            let mut list = std::mem::take(&mut self.out[v]);
            list.sort_by_key(|&e| self.nesting_depth[e]);
            self.out[v] = list;
        }
        self.reset_scratch();
        for i in 0..self.roots.len() {
            let r = self.roots[i];
            if !self.dfs_testing(r) {
                return false;
            }
        }
        for e in 0..self.g.m() {
            let s = self.sign(e);
            self.nesting_depth[e] *= s;
        }
        for v in 0..n {
            let mut list = std::mem::take(&mut self.out[v]);
            list.sort_by_key(|&e| self.nesting_depth[e]);
            // Initial rings: outgoing edges in clockwise order.
            let mut prev = NONE;
            for &e in &list {
                let d = 2 * e;
                if prev == NONE {
                    self.ring_first(v, d);
                } else {
                    self.insert_cw_after(v, prev, d);
                }
                prev = d;
            }
            self.out[v] = list;
        }
        self.reset_scratch();
        for i in 0..self.roots.len() {
            let r = self.roots[i];
            self.dfs_embedding(r);
        }
        true
    }

    fn reset_scratch(&mut self) {
        self.scratch_ind.iter_mut().for_each(|x| *x = 0);
        self.scratch_skip.iter_mut().for_each(|x| *x = false);
    }

    fn dfs_orientation(&mut self, root: usize) {
        let g = self.g;
        let mut ind = std::mem::take(&mut self.scratch_ind);
        let mut skip_init = std::mem::take(&mut self.scratch_skip);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            let nbrs = g.neighbors(v);
            while ind[v] < nbrs.len() {
                let w = nbrs[ind[v]];
                let vw = self.edge_id(v, w);
                if !skip_init[vw] {
                    if self.oriented[vw] {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[vw] = true;
                    self.src[vw] = v;
                    self.dst[vw] = w;
                    self.out[v].push(vw);
                    self.lowpt[vw] = self.height[v];
                    self.lowpt2[vw] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = vw;
                        self.height[w] = self.height[v] + 1;
                        stack.push(v);
                        stack.push(w);
                        skip_init[vw] = true;
                        break;
                    } else {
                        self.lowpt[vw] = self.height[w];
                    }
                }
                self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting_depth[vw] += 1;
                }
                if e != NONE {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
        self.scratch_ind = ind;
        self.scratch_skip = skip_init;
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn dfs_testing(&mut self, root: usize) -> bool {
        let mut ind = std::mem::take(&mut self.scratch_ind);
        let mut skip_init = std::mem::take(&mut self.scratch_skip);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            let mut skip_final = false;
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                let w = self.dst[ei];
                if !skip_init[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if ei == self.parent_edge[w] {
                        stack.push(v);
                        stack.push(w);
                        skip_init[ei] = true;
                        skip_final = true;
                        break;
                    } else {
                        self.lowpt_edge[ei] = ei;
                        self.stack.push(ConflictPair {
                            left: Interval::EMPTY,
                            right: Interval { low: ei, high: ei },
                        });
                    }
                }
                if self.lowpt[ei] < self.height[v] {
                    if ei == self.out[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !skip_final && e != NONE {
                self.remove_back_edges(e);
            }
        }
        self.scratch_ind = ind;
        self.scratch_skip = skip_init;
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::EMPTY;
        loop {
            let mut q = self.stack.pop().expect("conflict stack underflow");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.reference[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().expect("non-empty");
            if p.left.low != NONE {
                self.side[p.left.low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self
                .stack
                .last()
                .expect("return edge implies a pending conflict pair");
            let hl = top.left.high;
            let hr = top.right.high;
            self.reference[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                hl
            } else {
                hr
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut stack = vec![e];
        let mut old_ref: Vec<(usize, usize)> = Vec::new();
        while let Some(x) = stack.pop() {
            if self.reference[x] != NONE {
                stack.push(x);
                stack.push(self.reference[x]);
                old_ref.push((x, self.reference[x]));
                self.reference[x] = NONE;
            } else if let Some(pos) = old_ref.iter().rposition(|&(y, _)| y == x) {
                let (_, r) = old_ref.swap_remove(pos);
                self.side[x] *= self.side[r];
            }
        }
        self.side[e]
    }

    // ----- rotation rings -------------------------------------------------

    fn dart_from(&self, v: usize, e: usize) -> usize {
        if self.src[e] == v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn ring_first(&mut self, v: usize, d: usize) {
        self.cw[d] = d;
        self.ccw[d] = d;
        self.present[d] = true;
        self.leftmost[v] = d;
    }

    /// Inserts dart `d` at `v` immediately clockwise after `r`.
    fn insert_cw_after(&mut self, _v: usize, r: usize, d: usize) {
        let next = self.cw[r];
        self.cw[r] = d;
        self.ccw[d] = r;
        self.cw[d] = next;
        self.ccw[next] = d;
        self.present[d] = true;
    }

    /// Inserts dart `d` at `v` immediately counter-clockwise before `r`.
    fn insert_ccw_before(&mut self, v: usize, r: usize, d: usize) {
        let prev = self.ccw[r];
        self.insert_cw_after(v, prev, d);
    }

    fn add_first(&mut self, v: usize, d: usize) {
        if self.leftmost[v] == NONE {
            self.ring_first(v, d);
        } else {
            let lm = self.leftmost[v];
            self.insert_ccw_before(v, lm, d);
            self.leftmost[v] = d;
        }
    }

    fn dfs_embedding(&mut self, root: usize) {
        let mut ind = std::mem::take(&mut self.scratch_ind);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                ind[v] += 1;
                let w = self.dst[ei];
                let back = self.dart_from(w, ei);
                if ei == self.parent_edge[w] {
                    self.add_first(w, back);
                    self.left_ref[v] = w;
                    self.right_ref[v] = w;
                    stack.push(v);
                    stack.push(w);
                    break;
                } else if self.side[ei] == 1 {
                    let r = self.right_ref[w];
                    let rd = self.dart_from(w, self.edge_id(w, r));
                    self.insert_cw_after(w, rd, back);
                } else {
                    let l = self.left_ref[w];
                    let ld = self.dart_from(w, self.edge_id(w, l));
                    self.insert_ccw_before(w, ld, back);
                    self.left_ref[w] = v;
                }
            }
        }
        self.scratch_ind = ind;
    }

    fn rotation(&self) -> Rotation {
        let n = self.g.n();
        let mut rot = vec![Vec::new(); n];
        for (v, r) in rot.iter_mut().enumerate() {
            let nbrs = self.g.neighbors(v);
            let Some(&first_nb) = nbrs.first() else {
                continue;
            };
            let start = self.dart_from(v, self.edge_id(v, first_nb));
            debug_assert!(self.present[start]);
            let mut d = start;
            loop {
                let e = d / 2;
                r.push(if d.is_multiple_of(2) {
                    self.dst[e]
                } else {
                    self.src[e]
                });
                d = self.cw[d];
                if d == start {
                    break;
                }
            }
            debug_assert_eq!(r.len(), nbrs.len());
        }
        rot
    }
}

/// Number of faces of a rotation system under the successor face walk.
///
/// For a dart `u → v`, the next dart on its face is `v → w` where `w`
/// follows `u` in the rotation of `v`.
pub fn count_faces(rot: &Rotation) -> usize {
    let n = rot.len();
    let mut pos: Vec<std::collections::HashMap<usize, usize>> = vec![Default::default(); n];
    for (v, r) in rot.iter().enumerate() {
        for (i, &w) in r.iter().enumerate() {
            pos[v].insert(w, i);
        }
    }
    let mut seen: Vec<Vec<bool>> = rot.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = 0;
    for v in 0..n {
        for i in 0..rot[v].len() {
            if seen[v][i] {
                continue;
            }
            faces += 1;
            let (mut a, mut j) = (v, i);
            while !seen[a][j] {
                seen[a][j] = true;
                let b = rot[a][j];
                let k = pos[b][&a];
                let next = (k + 1) % rot[b].len();
                a = b;
                j = next;
            }
        }
    }
    faces
}

/// Checks that every connected component of `g` is embedded on its own
/// sphere: `n − m + f = 2c`, with `c` components (an isolated vertex counts
/// as one face).
pub fn euler_ok(g: &Graph, rot: &Rotation) -> bool {
    let mut f = count_faces(rot);
    let mut comps = 0;
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        comps += 1;
        if g.degree(s) == 0 {
            f += 1;
        }
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    g.n() as i64 - g.m() as i64 + f as i64 == 2 * comps as i64
}
