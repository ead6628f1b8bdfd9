//! Graphs and vertex subsets.
//!
//! Vertices of an n-vertex graph are the integers `0..n`. Subsets are packed
//! bitsets ([`VertexSet`]), and adjacency is stored as one neighbourhood set
//! per vertex, so the inner loops of rank and class computations are word
//! operations. All graphs here are simple and undirected: parallel edges
//! collapse on input and self-loops are rejected.

use std::fmt;
use thiserror::Error;

const WORD_BITS: usize = 64;

/// Subset of `{0, .., n-1}` as a packed bitset.
///
/// Sets carry their universe size `n`; binary operations require both
/// operands to share it. Bits at positions `>= n` are kept zero, which makes
/// `Eq`/`Hash`/`Ord` structural. The ordering compares universes first and
/// then the bit pattern as a big-endian number, giving maps over sets a
/// deterministic iteration order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, words: vec![0; n.div_ceil(WORD_BITS)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(v);
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Self {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside universe of size {}", self.n);
        self.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside universe of size {}", self.n);
        self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = VertexSet {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `|self ∩ other|` without allocating the intersection.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_words(&self, other: &VertexSet, op: impl Fn(u64, u64) -> u64) -> VertexSet {
        debug_assert_eq!(self.n, other.n, "vertex sets from different universes");
        VertexSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    fn clear_tail(&mut self) {
        let used = self.n % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Simple undirected graph with adjacency stored as per-vertex bitsets.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: (0..n).map(|_| VertexSet::empty(n)).collect() }
    }

    /// Builds from an edge list; panics on out-of-range endpoints or loops.
    /// Use the parsers for untrusted input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) outside 0..{}", self.n);
        assert_ne!(u, v, "self-loop at {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = VertexSet::singleton(self.n, 0);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in self.adj[v].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == self.n
    }

    /// Text form matching the edge-list input format.
    pub fn to_edge_list_string(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

#[derive(Debug, Error)]
pub enum GraphParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex {token} out of range for n = {n}")]
    VertexOutOfRange { line: usize, token: String, n: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("header declares {declared} edges but the file lists {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
}

fn malformed(line: usize, msg: impl Into<String>) -> GraphParseError {
    GraphParseError::Malformed { line, msg: msg.into() }
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, GraphParseError> {
    token
        .parse::<usize>()
        .map_err(|_| malformed(line, format!("expected {what}, got {token:?}")))
}

/// Parses the whitespace edge-list format: a header `n m`, then `m` lines
/// `u v` with 0-based endpoints. `#` starts a comment line; blank lines are
/// skipped. Parallel edges collapse silently, self-loops are errors.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphParseError> {
    let mut graph: Option<Graph> = None;
    let mut declared = 0usize;
    let mut found = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match graph {
            None => {
                if tokens.len() != 2 {
                    return Err(malformed(line, format!("expected header \"n m\", got {content:?}")));
                }
                let n = parse_usize(line, tokens[0], "vertex count")?;
                declared = parse_usize(line, tokens[1], "edge count")?;
                graph = Some(Graph::new(n));
            }
            Some(ref mut g) => {
                if tokens.len() != 2 {
                    return Err(malformed(line, format!("expected edge \"u v\", got {content:?}")));
                }
                let u = parse_usize(line, tokens[0], "vertex id")?;
                let v = parse_usize(line, tokens[1], "vertex id")?;
                for (t, w) in [(tokens[0], u), (tokens[1], v)] {
                    if w >= g.n() {
                        return Err(GraphParseError::VertexOutOfRange {
                            line,
                            token: t.to_string(),
                            n: g.n(),
                        });
                    }
                }
                if u == v {
                    return Err(GraphParseError::SelfLoop { line, v: u });
                }
                g.add_edge(u, v);
                found += 1;
            }
        }
    }
    let g = graph.ok_or(GraphParseError::MissingHeader)?;
    if found != declared {
        return Err(GraphParseError::EdgeCountMismatch { declared, found });
    }
    Ok(g)
}

/// Parses DIMACS graph format: `c` comment lines, one `p edge n m` problem
/// line, then `m` lines `e u v` with 1-based endpoints.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphParseError> {
    let mut graph: Option<Graph> = None;
    let mut declared = 0usize;
    let mut found = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if graph.is_some() {
                    return Err(malformed(line, "second p line"));
                }
                if tokens.len() != 4 || tokens[1] != "edge" {
                    return Err(malformed(line, format!("expected \"p edge n m\", got {content:?}")));
                }
                let n = parse_usize(line, tokens[2], "vertex count")?;
                declared = parse_usize(line, tokens[3], "edge count")?;
                graph = Some(Graph::new(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| malformed(line, "edge line before p line"))?;
                if tokens.len() != 3 {
                    return Err(malformed(line, format!("expected \"e u v\", got {content:?}")));
                }
                let u = parse_usize(line, tokens[1], "vertex id")?;
                let v = parse_usize(line, tokens[2], "vertex id")?;
                for (t, w) in [(tokens[1], u), (tokens[2], v)] {
                    if w == 0 || w > g.n() {
                        return Err(GraphParseError::VertexOutOfRange {
                            line,
                            token: t.to_string(),
                            n: g.n(),
                        });
                    }
                }
                if u == v {
                    return Err(GraphParseError::SelfLoop { line, v: u });
                }
                g.add_edge(u - 1, v - 1);
                found += 1;
            }
            other => {
                return Err(malformed(line, format!("unknown line type {other:?}")));
            }
        }
    }
    let g = graph.ok_or(GraphParseError::MissingHeader)?;
    if found != declared {
        return Err(GraphParseError::EdgeCountMismatch { declared, found });
    }
    Ok(g)
}

/// Parses with an explicit format, or sniffs one: files whose first
/// non-blank line starts with `c` or `p` are treated as DIMACS.
pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<Graph, GraphParseError> {
    let format = format.unwrap_or_else(|| {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .unwrap_or("");
        if first.starts_with("p ") || first.starts_with("c ") || first == "c" {
            GraphFormat::Dimacs
        } else {
            GraphFormat::EdgeList
        }
    });
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}
