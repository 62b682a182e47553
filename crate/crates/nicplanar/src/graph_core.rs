//! Simple undirected graphs on dense vertex indices, connectivity predicates,
//! and the two interchange formats (edge-list and graph6).

use std::fmt;

use crate::error::GraphError;

/// A simple undirected graph with vertices `0..n`.
///
/// The edge list is normalized (`u < v`) and sorted; adjacency lists are
/// sorted as well, so iteration order is deterministic and `has_edge` is a
/// binary search.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, {:?})",
            self.n,
            self.edges.len(),
            self.edges
        )
    }
}

/// Supported plain-graph serializations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    /// First line `n`, then one `u v` pair per line (0-based).
    EdgeList,
    /// The standard 6-bit graph6 encoding without header.
    Graph6,
}

#[inline]
fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge { vertex: u });
            }
            list.push(norm(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
        Ok(Self::from_sorted(n, list))
    }

    /// Builds a graph from arbitrary pairs, silently dropping loops and duplicates.
    ///
    /// Panics if an endpoint is out of range; intended for internal constructors.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut list: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| {
                assert!(u < n && v < n, "edge ({u},{v}) out of range for n={n}");
                norm(u, v)
            })
            .collect();
        list.sort_unstable();
        list.dedup();
        Self::from_sorted(n, list)
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Normalized (`u < v`), sorted edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Whether `{u, v}` is an edge.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`], if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&norm(u, v)).ok()
    }

    /// A copy of this graph with the given edges removed (absent edges are ignored).
    pub fn without_edges(&self, remove: &[(usize, usize)]) -> Graph {
        let mut rm: Vec<(usize, usize)> = remove.iter().map(|&(u, v)| norm(u, v)).collect();
        rm.sort_unstable();
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| rm.binary_search(e).is_err())
            .collect();
        Self::from_sorted(self.n, kept)
    }

    /// Whether the graph is connected (the empty graph and `K1` count as connected).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// True iff the graph is connected and has no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        self.is_biconnected_without(None)
    }

    /// Biconnectivity of the graph with vertex `skip` deleted (if given).
    fn is_biconnected_without(&self, skip: Option<usize>) -> bool {
        let alive = |v: usize| Some(v) != skip;
        let verts: Vec<usize> = (0..self.n).filter(|&v| alive(v)).collect();
        if verts.len() <= 2 {
            // K1 and K2 have no cut vertex; two isolated vertices are disconnected.
            return match verts.len() {
                2 => self.has_edge(verts[0], verts[1]),
                _ => true,
            };
        }
        let root = verts[0];
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut time = 0;
        // Iterative DFS with an explicit stack of (vertex, parent, next neighbor index).
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = 0;
        low[root] = 0;
        let mut root_children = 0;
        while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
            if *i < self.adj[v].len() {
                let w = self.adj[v][*i];
                *i += 1;
                if !alive(w) || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        return false;
                    }
                }
            }
        }
        if root_children > 1 {
            return false;
        }
        verts.iter().all(|&v| disc[v] != usize::MAX)
    }

    /// True iff the graph has no separating pair (and at least four vertices).
    ///
    /// Deletes each vertex in turn and tests biconnectivity of the rest, which
    /// is `O(n·m)`; this predicate is only used by verifiers and tests.
    pub fn is_triconnected(&self) -> Result<bool, GraphError> {
        if self.n < 4 {
            return Err(GraphError::TooSmall { n: self.n, min: 4 });
        }
        if !self.is_biconnected() {
            return Ok(false);
        }
        Ok((0..self.n).all(|v| self.is_biconnected_without(Some(v))))
    }

    /// Parses a graph in the given format.
    pub fn parse(bytes: &[u8], format: GraphFormat) -> Result<Graph, GraphError> {
        match format {
            GraphFormat::EdgeList => parse_edge_list(bytes),
            GraphFormat::Graph6 => parse_graph6(bytes),
        }
    }

    /// Serializes the graph in the given format.
    pub fn serialize(&self, format: GraphFormat) -> Vec<u8> {
        match format {
            GraphFormat::EdgeList => {
                let mut s = format!("{}\n", self.n);
                for &(u, v) in &self.edges {
                    s.push_str(&format!("{u} {v}\n"));
                }
                s.into_bytes()
            }
            GraphFormat::Graph6 => self.to_graph6().into_bytes(),
        }
    }

    /// The graph6 encoding (no trailing newline).
    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out: Vec<u8> = Vec::new();
        if n < 63 {
            out.push(n as u8 + 63);
        } else if n < 258_048 {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        } else {
            out.push(126);
            out.push(126);
            for shift in [30, 24, 18, 12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        }
        let total = n * n.saturating_sub(1) / 2;
        let mut bits = vec![false; total];
        for &(u, v) in &self.edges {
            // Column-major upper triangle: bit index of (u, v) with u < v.
            bits[v * (v - 1) / 2 + u] = true;
        }
        for chunk in bits.chunks(6) {
            let mut byte = 0u8;
            for (k, &b) in chunk.iter().enumerate() {
                if b {
                    byte |= 1 << (5 - k);
                }
            }
            out.push(byte + 63);
        }
        String::from_utf8(out).expect("graph6 output is ASCII")
    }
}

fn parse_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        offset,
        message: message.into(),
    }
}

fn parse_edge_list(bytes: &[u8]) -> Result<Graph, GraphError> {
    let text =
        std::str::from_utf8(bytes).map_err(|e| parse_err(e.valid_up_to(), "invalid UTF-8"))?;
    // Tokenize while remembering byte offsets for error messages.
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let mut pos = 0;
        for tok in content.split_whitespace() {
            let rel = content[pos..].find(tok).map(|p| p + pos).unwrap_or(pos);
            pos = rel + tok.len();
            tokens.push((offset + rel, tok));
        }
        offset += line.len();
    }
    if tokens.is_empty() {
        return Err(parse_err(0, "missing vertex count"));
    }
    let num = |(off, tok): (usize, &str)| -> Result<usize, GraphError> {
        tok.parse::<usize>().map_err(|_| {
            parse_err(
                off,
                format!("expected a non-negative integer, found {tok:?}"),
            )
        })
    };
    let n = num(tokens[0])?;
    let rest = &tokens[1..];
    if !rest.len().is_multiple_of(2) {
        let (off, _) = rest[rest.len() - 1];
        return Err(parse_err(off, "dangling endpoint without partner"));
    }
    let mut edges = Vec::with_capacity(rest.len() / 2);
    for pair in rest.chunks(2) {
        let u = num(pair[0])?;
        let v = num(pair[1])?;
        for (w, off) in [(u, pair[0].0), (v, pair[1].0)] {
            if w >= n {
                return Err(parse_err(off, format!("vertex {w} out of range for n={n}")));
            }
        }
        if u == v {
            return Err(parse_err(pair[0].0, format!("loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    Graph::new(n, &edges)
}

fn parse_graph6(bytes: &[u8]) -> Result<Graph, GraphError> {
    let mut data = bytes;
    while let Some((&last, head)) = data.split_last() {
        if last.is_ascii_whitespace() {
            data = head;
        } else {
            break;
        }
    }
    const HEADER: &[u8] = b">>graph6<<";
    let base = if data.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };
    let data = &data[base..];
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(
                base + i,
                format!("byte {b:#04x} outside the graph6 range"),
            ));
        }
    }
    if data.is_empty() {
        return Err(parse_err(base, "empty graph6 string"));
    }
    let (n, mut pos) = if data[0] != 126 {
        (usize::from(data[0] - 63), 1)
    } else if data.len() >= 2 && data[1] == 126 {
        if data.len() < 8 {
            return Err(parse_err(base + data.len(), "truncated graph6 size header"));
        }
        let n = data[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, 8)
    } else {
        if data.len() < 4 {
            return Err(parse_err(base + data.len(), "truncated graph6 size header"));
        }
        let n = data[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, 4)
    };
    let total = n * n.saturating_sub(1) / 2;
    let need = total.div_ceil(6);
    if data.len() - pos != need {
        return Err(parse_err(
            base + data.len(),
            format!(
                "expected {need} adjacency bytes for n={n}, found {}",
                data.len() - pos
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = data[pos + k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((u, v));
            }
            k += 1;
            if k == total {
                break 'outer;
            }
        }
    }
    pos += need;
    debug_assert_eq!(pos, data.len());
    Graph::new(n, &edges)
}

/// Complete graph `K_n`.
pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 0..n {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    Graph::from_sorted(n, {
        edges.sort_unstable();
        edges
    })
}

/// Cycle `C_n` on vertices `0..n` (requires `n ≥ 3`).
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    Graph::from_edges_dedup(n, (0..n).map(|i| (i, (i + 1) % n)))
}
