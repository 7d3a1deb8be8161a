//! Undirected simple graphs stored as adjacency bit rows.
//!
//! Row `u` is a run of `words` 64-bit blocks; bit `v` of row `u` is set iff
//! `uv` is an edge. Every constructor keeps the rows symmetric and
//! irreflexive, so a `Graph` value is always a valid simple graph.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("complete multipartite graph needs at least one part")]
    NoParts,
    #[error("part sizes must be positive")]
    EmptyPart,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("random regular generation exhausted {attempts} attempts for n={n}, d={d}")]
    RetryBudgetExhausted { n: usize, d: usize, attempts: usize },
    #[error("labeled enumeration supports 1 <= n <= 7, got {0}")]
    EnumerationRange(usize),
}

/// Parse failures for the edge-list text format. Line numbers are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("line {line}: malformed header, expected \"n m\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed edge, expected \"u v\"")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {vertex} out of range 0..{n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    CountMismatch { declared: usize, found: usize },
    #[error("graph order must be at least 1")]
    NoVertices,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    m: usize,
    rows: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Iterates the set bits of a block slice in increasing order.
pub(crate) fn iter_bits(blocks: &[u64]) -> impl Iterator<Item = usize> + '_ {
    blocks.iter().enumerate().flat_map(|(w, &block)| {
        let mut rest = block;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + bit)
        })
    })
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let words = words_for(n);
        Ok(Graph {
            n,
            words,
            m: 0,
            rows: vec![0; n * words],
        })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Ok(Self::empty(n)?.complement())
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Graph whose `k`-th lexicographic vertex pair is an edge iff bit `k`
    /// of `mask` is set. Pairs are ordered (0,1), (0,2), ..., (n-2,n-1).
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if k < 64 && mask >> k & 1 == 1 {
                    g.set_edge(u, v);
                }
                k += 1;
            }
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (wu, wv) = (self.words * u, self.words * v);
        if self.rows[wu + v / 64] >> (v % 64) & 1 == 0 {
            self.m += 1;
        }
        self.rows[wu + v / 64] |= 1 << (v % 64);
        self.rows[wv + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of 64-bit blocks per row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Average degree `2m/n`.
    pub fn average_degree(&self) -> f64 {
        2.0 * self.m as f64 / self.n as f64
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|u| self.row(u).iter().all(|&w| w == 0))
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let mut rows = vec![0u64; self.rows.len()];
        for u in 0..self.n {
            let base = u * self.words;
            for w in 0..self.words {
                let lo = w * 64;
                let valid = if lo + 64 <= self.n {
                    u64::MAX
                } else {
                    (1u64 << (self.n - lo)) - 1
                };
                rows[base + w] = !self.rows[base + w] & valid;
            }
            rows[base + u / 64] &= !(1 << (u % 64));
        }
        Graph {
            n: self.n,
            words: self.words,
            m: self.n * (self.n - 1) / 2 - self.m,
            rows,
        }
    }

    /// Subgraph induced by `vertices`, relabeled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut h = Graph::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    h.set_edge(i, j);
                }
            }
        }
        Ok(h)
    }

    /// Disjoint union, vertices of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n).expect("n >= 2");
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Number of edges among the neighbours of each vertex.
    pub fn triangles_per_vertex(&self) -> Vec<usize> {
        (0..self.n)
            .map(|u| {
                let row = self.row(u);
                let twice: usize = self
                    .neighbors(u)
                    .map(|v| {
                        self.row(v)
                            .iter()
                            .zip(row)
                            .map(|(a, b)| (a & b).count_ones() as usize)
                            .sum::<usize>()
                    })
                    .sum();
                twice / 2
            })
            .collect()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles_per_vertex().iter().sum::<usize>() / 3
    }

    /// Dense row-major 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for (u, v) in self.edges() {
            a[u * n + v] = 1.0;
            a[v * n + u] = 1.0;
        }
        a
    }

    /// Dense row-major Laplacian `D - A`.
    pub fn laplacian_matrix(&self) -> Vec<f64> {
        let n = self.n;
        let mut l = self.adjacency_matrix();
        for x in l.iter_mut() {
            *x = -*x;
        }
        for u in 0..n {
            l[u * n + u] = self.degree(u) as f64;
        }
        l
    }

    /// Parses the edge-list format: a header line `n m`, then `m` lines
    /// `u v` with 0-based endpoints. Blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let (n, declared) =
            parse_pair(header).ok_or(ParseError::MalformedHeader { line: hline })?;
        if n == 0 {
            return Err(ParseError::NoVertices);
        }
        let mut g = Graph::empty(n).map_err(|_| ParseError::NoVertices)?;
        let mut found = 0;
        for (line, text) in lines {
            let (u, v) = parse_pair(text).ok_or(ParseError::MalformedEdge { line })?;
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(ParseError::VertexOutOfRange { line, vertex, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
            if g.has_edge(u, v) {
                return Err(ParseError::DuplicateEdge { line, u, v });
            }
            g.set_edge(u, v);
            found += 1;
        }
        if found != declared {
            return Err(ParseError::CountMismatch { declared, found });
        }
        Ok(g)
    }

    /// Writes the edge-list format with edges sorted lexicographically.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Tests whether "non-adjacent or equal" is an equivalence relation whose
    /// classes are pairwise completely joined. On success the classes are the
    /// parts, ordered by smallest member. An edgeless graph is one part.
    pub fn classify_complete_multipartite(&self) -> Result<MultipartiteCertificate, Refutation> {
        let n = self.n;
        // class(u) = non-neighbours of u together with u itself
        let class = |u: usize| -> Vec<u64> {
            let mut c: Vec<u64> = self.row(u).iter().map(|w| !w).collect();
            let tail = n % 64;
            if tail != 0 {
                *c.last_mut().unwrap() &= (1u64 << tail) - 1;
            }
            c
        };
        let mut assigned = vec![false; n];
        let mut parts = Vec::new();
        for u in 0..n {
            if assigned[u] {
                continue;
            }
            let cu = class(u);
            let members: Vec<usize> = iter_bits(&cu).collect();
            for &v in &members {
                let cv = class(v);
                if cv != cu {
                    for (w, (a, b)) in cu.iter().zip(&cv).enumerate() {
                        let only_v = b & !a;
                        if only_v != 0 {
                            // u ~ v, v ~ w non-adjacent, but u w adjacent
                            let x = w * 64 + only_v.trailing_zeros() as usize;
                            return Err(Refutation { triple: [u, v, x] });
                        }
                        let only_u = a & !b;
                        if only_u != 0 {
                            let x = w * 64 + only_u.trailing_zeros() as usize;
                            return Err(Refutation { triple: [v, u, x] });
                        }
                    }
                }
                assigned[v] = true;
            }
            parts.push(members);
        }
        let regular = parts.windows(2).all(|w| w[0].len() == w[1].len());
        Ok(MultipartiteCertificate { parts, regular })
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=[", self.n, self.m)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Partition witnessing that a graph is complete multipartite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipartiteCertificate {
    pub parts: Vec<Vec<usize>>,
    /// All parts have the same size.
    pub regular: bool,
}

impl MultipartiteCertificate {
    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// Part sizes differ by at most one.
    pub fn balanced(&self) -> bool {
        let sizes = self.part_sizes();
        let lo = sizes.iter().min().copied().unwrap_or(0);
        let hi = sizes.iter().max().copied().unwrap_or(0);
        hi - lo <= 1
    }
}

/// Vertices `[a, b, c]` with `a`, `b` non-adjacent, `b`, `c` non-adjacent and
/// `a`, `c` adjacent: non-adjacency is not transitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Refutation {
    pub triple: [usize; 3],
}
