use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Canonical sorted set of vertex indices of a host graph.
///
/// Equality of sets is equality of representations, so these can key maps
/// and live in ordered collections directly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn from_bitset(bits: &Bitset) -> Self {
        VertexSet(bits.iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Position of `v` in the canonical order, if present.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Text serialization formats for graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

/// Parses a graph in the given format; comment lines starting with `#` are
/// skipped in both.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => Graph::parse_edge_list(text),
        GraphFormat::Graph6 => crate::graph6::decode(text),
    }
}

/// Serializes a graph so that [`parse_graph`] inverts it.
pub fn serialize_graph(g: &Graph, format: GraphFormat) -> Result<String> {
    match format {
        GraphFormat::EdgeList => Ok(g.to_edge_list()),
        GraphFormat::Graph6 => Ok(format!("{}\n", crate::graph6::encode(g)?)),
    }
}

/// Undirected simple graph on vertices `0..n` with bitset adjacency rows.
///
/// Immutable once built by the parsers and generators; `add_edge` exists for
/// construction and for the edge-monotonicity tests, which clone first.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Bitset>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Bitset::new(n); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidParameter(format!("duplicate edge {u} {v}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Inserts an edge, returning false if it was already present.
    /// Panics on self-loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u}, {v})");
        if self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edge_count += 1;
        true
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        self.adj[u].intersection_count(&self.adj[v])
    }

    /// Edges as (u, v) pairs with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.n as f64
        }
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * (self.n - 1) / 2
    }

    /// Subgraph induced on `set`, relabeled `0..set.len()` in canonical order.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        if let Some(v) = set.iter().find(|&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let k = set.len();
        let mut g = Graph::empty(k);
        for (i, u) in set.iter().enumerate() {
            for (j, v) in set.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    // ---- standard constructions ----

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Complete bipartite graph with parts `0..r` and `r..r+s`.
    pub fn complete_bipartite(r: usize, s: usize) -> Self {
        let mut g = Graph::empty(r + s);
        for u in 0..r {
            for v in r..r + s {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    /// Star on `n` vertices: center 0 joined to `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(0, v);
        }
        g
    }

    // ---- edge-list text format ----

    /// Parses the text edge-list format: header line `n m`, then `m` lines
    /// `u v` with `u < v`. Lines starting with `#` are comments.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let mut it = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize| -> Result<usize> {
            tok.ok_or_else(|| Error::Parse {
                line,
                msg: "malformed header: expected \"n m\"".into(),
            })?
            .parse::<usize>()
            .map_err(|e| Error::Parse {
                line,
                msg: format!("malformed header: {e}"),
            })
        };
        let n = parse_num(it.next(), header_line)?;
        let m = parse_num(it.next(), header_line)?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: header_line,
                msg: "malformed header: trailing tokens".into(),
            });
        }

        let mut g = Graph::empty(n);
        let mut seen = 0usize;
        for (line, text) in lines {
            let mut it = text.split_whitespace();
            let u = parse_num(it.next(), line)?;
            let v = parse_num(it.next(), line)?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line,
                    msg: "trailing tokens after edge".into(),
                });
            }
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex index out of range: {} >= {n}", u.max(v)),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    msg: format!("self-loop at vertex {u}"),
                });
            }
            if g.has_edge(u, v) {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate edge {u} {v}"),
                });
            }
            g.add_edge(u, v);
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header promised {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges={:?})",
            self.n,
            self.edge_count,
            self.edges()
        )
    }
}
