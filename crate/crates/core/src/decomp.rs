//! Branch decompositions: subcubic trees whose leaves carry the vertices.
//!
//! A branch decomposition of an n-vertex graph is an unrooted tree in which
//! every node has degree 1 or 3 and the degree-1 nodes are in bijection with
//! the graph vertices (for n <= 2 the tree is a single node or a single
//! edge). Removing a tree edge splits the leaves, hence the vertices, into
//! a bipartition; those are the decomposition's cuts. The width of the
//! decomposition under a cut function f is the maximum of f over its cuts,
//! and graphs with at most one vertex have width f(empty set) by convention.
//!
//! Cuts are reported in a canonical orientation: the side that does not
//! contain vertex 0. Concretely the tree is rooted at the leaf carrying
//! vertex 0 and each remaining node contributes the vertex set below it, so
//! cut ids are stable for a given tree and usable as edge addresses when
//! rooting.

use crate::cutrank::CutFunction;
use crate::graph::{Graph, VertexSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NodeOutOfRange { node: usize },
    VertexOutOfRange { vertex: usize },
    BadDegree { node: usize, degree: usize },
    Disconnected,
    NotATree,
    LeafWithoutVertex { node: usize },
    InternalWithVertex { node: usize },
    VertexUnassigned { vertex: usize },
    VertexAssignedTwice { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NodeOutOfRange { node } => write!(f, "node {node} out of range"),
            Violation::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            Violation::BadDegree { node, degree } => {
                write!(f, "node {node} has degree {degree}, want 1 or 3")
            }
            Violation::Disconnected => write!(f, "tree is not connected"),
            Violation::NotATree => write!(f, "edge count is not node count minus one"),
            Violation::LeafWithoutVertex { node } => write!(f, "leaf {node} carries no vertex"),
            Violation::InternalWithVertex { node } => {
                write!(f, "internal node {node} carries a vertex")
            }
            Violation::VertexUnassigned { vertex } => write!(f, "vertex {vertex} has no leaf"),
            Violation::VertexAssignedTwice { vertex } => {
                write!(f, "vertex {vertex} assigned to two leaves")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum DecompError {
    #[error("invalid decomposition: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("decomposition text, offset {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("decomposition mentions vertex {vertex}, graph has n = {n}")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("vertex {vertex} appears twice")]
    RepeatedVertex { vertex: usize },
    #[error("vertex {vertex} missing from decomposition")]
    MissingVertex { vertex: usize },
    #[error("graph has no vertices, nothing to decompose")]
    EmptyGraph,
    #[error("no cut with id {id}, tree has {count}")]
    NoSuchCut { id: usize, count: usize },
}

/// Checks the branch decomposition shape axioms on raw parts; an empty
/// result means valid. `n_nodes` fixes the node universe `0..n_nodes`.
pub fn validate(
    n_vertices: usize,
    n_nodes: usize,
    edges: &[(usize, usize)],
    assignments: &[(usize, usize)],
) -> Vec<Violation> {
    let mut out = Vec::new();
    for &(a, b) in edges {
        for node in [a, b] {
            if node >= n_nodes {
                out.push(Violation::NodeOutOfRange { node });
            }
        }
    }
    let mut vertex_of = vec![None; n_nodes];
    let mut seen_vertex = vec![0usize; n_vertices];
    for &(node, vertex) in assignments {
        if node >= n_nodes {
            out.push(Violation::NodeOutOfRange { node });
            continue;
        }
        if vertex >= n_vertices {
            out.push(Violation::VertexOutOfRange { vertex });
            continue;
        }
        vertex_of[node] = Some(vertex);
        seen_vertex[vertex] += 1;
    }
    if !out.is_empty() {
        return out;
    }
    for (vertex, &count) in seen_vertex.iter().enumerate() {
        if count == 0 {
            out.push(Violation::VertexUnassigned { vertex });
        } else if count > 1 {
            out.push(Violation::VertexAssignedTwice { vertex });
        }
    }

    let mut degree = vec![0usize; n_nodes];
    let mut adj = vec![Vec::new(); n_nodes];
    for &(a, b) in edges {
        degree[a] += 1;
        degree[b] += 1;
        adj[a].push(b);
        adj[b].push(a);
    }
    if edges.len() + 1 != n_nodes {
        out.push(Violation::NotATree);
    }
    if n_nodes > 0 {
        let mut seen = vec![false; n_nodes];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != n_nodes {
            out.push(Violation::Disconnected);
        }
    }

    for node in 0..n_nodes {
        // Degree-3 internal nodes, except that tiny instances allow a lone
        // node (n = 1) or a single edge (n = 2).
        let ok_degree = match n_vertices {
            0 | 1 => degree[node] == 0,
            2 => degree[node] == 1,
            _ => degree[node] == 1 || degree[node] == 3,
        };
        if !ok_degree {
            out.push(Violation::BadDegree { node, degree: degree[node] });
        }
        let is_leaf = degree[node] <= 1;
        match (is_leaf, vertex_of[node]) {
            (true, None) => out.push(Violation::LeafWithoutVertex { node }),
            (false, Some(_)) => out.push(Violation::InternalWithVertex { node }),
            _ => {}
        }
    }
    out
}

/// One tree edge of a decomposition together with its canonical cut side
/// (the vertices on the `child` half, never containing vertex 0).
#[derive(Debug, Clone)]
pub struct TreeCut {
    pub parent: usize,
    pub child: usize,
    pub side: VertexSet,
}

#[derive(Clone)]
pub struct BranchDecomposition {
    n: usize,
    adj: Vec<Vec<usize>>,
    vertex_of_node: Vec<Option<usize>>,
    leaf_of_vertex: Vec<usize>,
}

impl BranchDecomposition {
    pub fn from_parts(
        n_vertices: usize,
        n_nodes: usize,
        edges: &[(usize, usize)],
        assignments: &[(usize, usize)],
    ) -> Result<Self, DecompError> {
        if n_vertices == 0 {
            return Err(DecompError::EmptyGraph);
        }
        let violations = validate(n_vertices, n_nodes, edges, assignments);
        if !violations.is_empty() {
            return Err(DecompError::Invalid(violations));
        }
        let mut adj = vec![Vec::new(); n_nodes];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for neighbors in adj.iter_mut() {
            neighbors.sort_unstable();
        }
        let mut vertex_of_node = vec![None; n_nodes];
        let mut leaf_of_vertex = vec![0; n_vertices];
        for &(node, vertex) in assignments {
            vertex_of_node[node] = Some(vertex);
            leaf_of_vertex[vertex] = node;
        }
        Ok(BranchDecomposition { n: n_vertices, adj, vertex_of_node, leaf_of_vertex })
    }

    /// The one-node decomposition of a single-vertex graph.
    pub fn trivial() -> Self {
        BranchDecomposition {
            n: 1,
            adj: vec![Vec::new()],
            vertex_of_node: vec![Some(0)],
            leaf_of_vertex: vec![0],
        }
    }

    /// Spine-shaped decomposition: vertex i hangs off the i-th spine node.
    /// Cheap to build and a useful fixed baseline.
    pub fn caterpillar(n: usize) -> Result<Self, DecompError> {
        match n {
            0 => Err(DecompError::EmptyGraph),
            1 => Ok(Self::trivial()),
            2 => Self::from_parts(2, 2, &[(0, 1)], &[(0, 0), (1, 1)]),
            _ => {
                // Leaves 0..n (leaf i carries vertex i), spine n..2n-2.
                let spine = |i: usize| n + i;
                let mut edges = vec![(0, spine(0)), (1, spine(0))];
                for i in 1..n - 2 {
                    edges.push((spine(i - 1), spine(i)));
                    edges.push((i + 1, spine(i)));
                }
                edges.push((spine(n - 3), n - 1));
                let assignments: Vec<(usize, usize)> = (0..n).map(|v| (v, v)).collect();
                Self::from_parts(n, 2 * n - 2, &edges, &assignments)
            }
        }
    }

    pub fn graph_n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn vertex_of_node(&self, node: usize) -> Option<usize> {
        self.vertex_of_node[node]
    }

    pub fn leaf_of_vertex(&self, vertex: usize) -> usize {
        self.leaf_of_vertex[vertex]
    }

    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, neighbors) in self.adj.iter().enumerate() {
            for &b in neighbors {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All cuts in canonical orientation, one per tree edge, in depth-first
    /// order from the leaf carrying vertex 0. The index in the returned
    /// vector is the cut's id. Empty for single-node trees.
    pub fn enumerate_cuts(&self) -> Vec<TreeCut> {
        if self.node_count() <= 1 {
            return Vec::new();
        }
        let root = self.leaf_of_vertex[0];
        // Iterative DFS computing subtree vertex sets bottom-up.
        let mut order = Vec::with_capacity(self.node_count());
        let mut parent = vec![usize::MAX; self.node_count()];
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &self.adj[v] {
                if parent[w] == usize::MAX && w != root {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut below: Vec<VertexSet> = (0..self.node_count())
            .map(|node| match self.vertex_of_node[node] {
                Some(v) => VertexSet::singleton(self.n, v),
                None => VertexSet::empty(self.n),
            })
            .collect();
        for &v in order.iter().rev() {
            if v != root {
                let set = below[v].clone();
                below[parent[v]].union_with(&set);
            }
        }
        // Discovery order of the DFS above, skipping the root.
        order
            .into_iter()
            .filter(|&v| v != root)
            .map(|child| TreeCut { parent: parent[child], child, side: below[child].clone() })
            .collect()
    }

    /// Max of `f` over all cuts; `f(empty)` when there is at most one vertex.
    pub fn f_width(&self, g: &Graph, f: &dyn CutFunction) -> usize {
        assert_eq!(g.n(), self.n, "decomposition/graph size mismatch");
        if self.n <= 1 {
            return f.eval(g, &VertexSet::empty(self.n));
        }
        self.enumerate_cuts()
            .iter()
            .map(|cut| f.eval(g, &cut.side))
            .max()
            .expect("n >= 2 trees have cuts")
    }

    /// Roots the tree by subdividing the edge of cut `cut_id` with a fresh
    /// root node. For single-node trees use [`RootedDecomposition::from`].
    pub fn root_at_cut(&self, cut_id: usize) -> Result<RootedDecomposition, DecompError> {
        let cuts = self.enumerate_cuts();
        if cut_id >= cuts.len() {
            return Err(DecompError::NoSuchCut { id: cut_id, count: cuts.len() });
        }
        let (a, b) = (cuts[cut_id].parent, cuts[cut_id].child);
        let root = self.node_count();
        let mut adj = self.adj.clone();
        adj.push(vec![a, b]);
        adj[a].retain(|&x| x != b);
        adj[b].retain(|&x| x != a);
        adj[a].push(root);
        adj[b].push(root);
        let mut vertex_of_node = self.vertex_of_node.clone();
        vertex_of_node.push(None);
        Ok(RootedDecomposition::build(self.n, root, &adj, vertex_of_node))
    }

    /// Roots at the first cut (the edge at the leaf of vertex 0); the
    /// conventional deterministic choice when any root will do.
    pub fn root_default(&self) -> RootedDecomposition {
        if self.node_count() == 1 {
            return RootedDecomposition::build(1, 0, &[Vec::new()], vec![Some(0)]);
        }
        self.root_at_cut(0).expect("trees with >= 2 nodes have cuts")
    }
}

impl fmt::Display for BranchDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_decomposition(self))
    }
}

impl fmt::Debug for BranchDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BranchDecomposition({})", serialize_decomposition(self))
    }
}

/// Rooted binary view of a branch decomposition. Every internal node has
/// exactly two children; `below(w)` is the set of graph vertices at the
/// leaves under `w`, so `below(root)` is the whole vertex set and the
/// non-root `below` sets are exactly the cuts of the unrooted tree (the two
/// root children carry the two orientations of the subdivided edge).
pub struct RootedDecomposition {
    n: usize,
    root: usize,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    vertex_of_node: Vec<Option<usize>>,
    below: Vec<VertexSet>,
    postorder: Vec<usize>,
}

impl RootedDecomposition {
    fn build(
        n: usize,
        root: usize,
        adj: &[Vec<usize>],
        vertex_of_node: Vec<Option<usize>>,
    ) -> Self {
        let count = adj.len();
        let mut children = vec![Vec::new(); count];
        let mut parent = vec![None; count];
        let mut visited = vec![false; count];
        let mut stack = vec![root];
        visited[root] = true;
        let mut preorder = Vec::with_capacity(count);
        while let Some(v) = stack.pop() {
            preorder.push(v);
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some(v);
                    children[v].push(w);
                    stack.push(w);
                }
            }
        }
        let mut below: Vec<VertexSet> = vertex_of_node
            .iter()
            .map(|vo| match vo {
                Some(v) => VertexSet::singleton(n, *v),
                None => VertexSet::empty(n),
            })
            .collect();
        for &v in preorder.iter().rev() {
            if let Some(p) = parent[v] {
                let set = below[v].clone();
                below[p].union_with(&set);
            }
        }
        debug_assert_eq!(below[root].len(), n);

        // Postorder with children before parents, left child first.
        let mut postorder = Vec::with_capacity(count);
        let mut stack: Vec<(usize, bool)> = vec![(root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                postorder.push(v);
            } else {
                stack.push((v, true));
                for &c in children[v].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        RootedDecomposition { n, root, children, parent, vertex_of_node, below, postorder }
    }

    pub fn graph_n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        self.children[node].is_empty()
    }

    pub fn vertex_of_node(&self, node: usize) -> Option<usize> {
        self.vertex_of_node[node]
    }

    pub fn below(&self, node: usize) -> &VertexSet {
        &self.below[node]
    }

    /// Nodes with children before parents; the last entry is the root.
    pub fn postorder(&self) -> &[usize] {
        &self.postorder
    }
}

/// Reads the nested-pair text form: a decomposition is a vertex id or
/// `(term,term)`. The printed tree's branching structure is taken as the
/// rooted shape; a top-level pair denotes the two sides of one tree edge
/// (the degree-2 artificial root is dissolved). Every vertex `0..n` must
/// appear exactly once.
pub fn parse_decomposition(text: &str, n: usize) -> Result<BranchDecomposition, DecompError> {
    if n == 0 {
        return Err(DecompError::EmptyGraph);
    }
    let bytes = text.as_bytes();
    let mut pos = 0usize;

    #[derive(Debug)]
    enum Term {
        Leaf(usize),
        Pair(Box<Term>, Box<Term>),
    }

    fn skip_ws(bytes: &[u8], pos: &mut usize) {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    }

    fn parse_term(bytes: &[u8], pos: &mut usize) -> Result<Term, DecompError> {
        skip_ws(bytes, pos);
        if *pos >= bytes.len() {
            return Err(DecompError::Parse { at: *pos, msg: "unexpected end of input".into() });
        }
        match bytes[*pos] {
            b'(' => {
                *pos += 1;
                let left = parse_term(bytes, pos)?;
                skip_ws(bytes, pos);
                if *pos >= bytes.len() || bytes[*pos] != b',' {
                    return Err(DecompError::Parse { at: *pos, msg: "expected ','".into() });
                }
                *pos += 1;
                let right = parse_term(bytes, pos)?;
                skip_ws(bytes, pos);
                if *pos >= bytes.len() || bytes[*pos] != b')' {
                    return Err(DecompError::Parse { at: *pos, msg: "expected ')'".into() });
                }
                *pos += 1;
                Ok(Term::Pair(Box::new(left), Box::new(right)))
            }
            b'0'..=b'9' => {
                let start = *pos;
                while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                let s = std::str::from_utf8(&bytes[start..*pos]).expect("digits");
                let v = s.parse::<usize>().map_err(|_| DecompError::Parse {
                    at: start,
                    msg: format!("vertex id {s:?} too large"),
                })?;
                Ok(Term::Leaf(v))
            }
            c => Err(DecompError::Parse {
                at: *pos,
                msg: format!("unexpected character {:?}", c as char),
            }),
        }
    }

    let term = parse_term(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(DecompError::Parse {
            at: pos,
            msg: format!("trailing input {:?}", &text[pos..text.len().min(pos + 10)]),
        });
    }

    // Flatten to nodes and edges; the synthetic root pair becomes an edge.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut assignments: Vec<(usize, usize)> = Vec::new();
    let mut next_node = 0usize;
    let mut seen = vec![false; n];

    fn build(
        term: &Term,
        n: usize,
        next_node: &mut usize,
        edges: &mut Vec<(usize, usize)>,
        assignments: &mut Vec<(usize, usize)>,
        seen: &mut [bool],
    ) -> Result<usize, DecompError> {
        let node = *next_node;
        *next_node += 1;
        match term {
            Term::Leaf(v) => {
                if *v >= n {
                    return Err(DecompError::UnknownVertex { vertex: *v, n });
                }
                if seen[*v] {
                    return Err(DecompError::RepeatedVertex { vertex: *v });
                }
                seen[*v] = true;
                assignments.push((node, *v));
            }
            Term::Pair(l, r) => {
                let lc = build(l, n, next_node, edges, assignments, seen)?;
                edges.push((node, lc));
                let rc = build(r, n, next_node, edges, assignments, seen)?;
                edges.push((node, rc));
            }
        }
        Ok(node)
    }

    match term {
        Term::Leaf(v) => {
            if v >= n {
                return Err(DecompError::UnknownVertex { vertex: v, n });
            }
            if n != 1 {
                let missing = if v == 0 { 1 } else { 0 };
                return Err(DecompError::MissingVertex { vertex: missing });
            }
            Ok(BranchDecomposition::trivial())
        }
        Term::Pair(l, r) => {
            let lc = build(&l, n, &mut next_node, &mut edges, &mut assignments, &mut seen)?;
            let rc = build(&r, n, &mut next_node, &mut edges, &mut assignments, &mut seen)?;
            edges.push((lc, rc));
            if let Some(v) = seen.iter().position(|&s| !s) {
                return Err(DecompError::MissingVertex { vertex: v });
            }
            BranchDecomposition::from_parts(n, next_node, &edges, &assignments)
        }
    }
}

/// Writes the nested-pair text form, rooted at the edge next to vertex 0's
/// leaf and with siblings ordered by their smallest vertex, so equal trees
/// print equally.
pub fn serialize_decomposition(d: &BranchDecomposition) -> String {
    if d.graph_n() == 1 {
        return "0".to_string();
    }
    let rooted = d.root_default();
    fn write_node(r: &RootedDecomposition, node: usize, out: &mut String) {
        if let Some(v) = r.vertex_of_node(node) {
            out.push_str(&v.to_string());
            return;
        }
        let mut kids: Vec<usize> = r.children(node).to_vec();
        kids.sort_by_key(|&c| r.below(c).first());
        out.push('(');
        write_node(r, kids[0], out);
        out.push(',');
        write_node(r, kids[1], out);
        out.push(')');
    }
    let mut out = String::new();
    write_node(&rooted, rooted.root(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutrank::QCutRank;
    use crate::family;
    use std::collections::BTreeSet;

    fn bipartitions(cuts: &[TreeCut]) -> BTreeSet<BTreeSet<usize>> {
        // Orientation-free view: each cut as its min-normalized side.
        cuts.iter()
            .map(|c| {
                let side: BTreeSet<usize> = c.side.iter().collect();
                let comp: BTreeSet<usize> = c.side.complement().iter().collect();
                if side.contains(&0) {
                    side
                } else {
                    comp
                }
            })
            .map(|s| s.into_iter().collect())
            .collect()
    }

    #[test]
    fn validate_catches_shape_errors() {
        // A 4-leaf caterpillar with one internal node degree 2.
        let violations = validate(3, 4, &[(0, 3), (1, 3)], &[(0, 0), (1, 1), (2, 2)]);
        assert!(violations.iter().any(|v| matches!(v, Violation::Disconnected)));
        let violations = validate(2, 2, &[(0, 1)], &[(0, 0), (1, 0)]);
        assert!(violations.iter().any(|v| matches!(v, Violation::VertexAssignedTwice { vertex: 0 })));
        assert!(violations.iter().any(|v| matches!(v, Violation::VertexUnassigned { vertex: 1 })));
        let violations = validate(3, 5, &[(0, 3), (1, 3), (3, 4), (2, 4)], &[(0, 0), (1, 1), (2, 2)]);
        assert!(violations.iter().any(|v| matches!(v, Violation::BadDegree { degree: 2, .. })));
        assert!(validate(1, 1, &[], &[(0, 0)]).is_empty());
        assert!(validate(2, 2, &[(0, 1)], &[(0, 0), (1, 1)]).is_empty());
    }

    #[test]
    fn caterpillar_is_valid_and_has_expected_cuts() {
        for n in 1..=8 {
            let d = BranchDecomposition::caterpillar(n).unwrap();
            assert_eq!(d.graph_n(), n);
            let cuts = d.enumerate_cuts();
            assert_eq!(cuts.len(), if n <= 1 { 0 } else { 2 * n - 3 });
        }
        let d = BranchDecomposition::caterpillar(4).unwrap();
        let got = bipartitions(&d.enumerate_cuts());
        let want: BTreeSet<BTreeSet<usize>> = [
            vec![0],
            vec![0, 2, 3],
            vec![0, 1, 3],
            vec![0, 1, 2],
            vec![0, 1],
        ]
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn canonical_cut_orientation_avoids_vertex_zero() {
        let d = BranchDecomposition::caterpillar(6).unwrap();
        for cut in d.enumerate_cuts() {
            assert!(!cut.side.contains(0));
            assert!(!cut.side.is_empty());
        }
    }

    #[test]
    fn f_width_on_known_instances() {
        let c5 = family::cycle(5).unwrap();
        let d = BranchDecomposition::caterpillar(5).unwrap();
        assert_eq!(d.f_width(&c5, &QCutRank), 2);

        let p4 = family::path(4).unwrap();
        let d = BranchDecomposition::caterpillar(4).unwrap();
        assert_eq!(d.f_width(&p4, &QCutRank), 1);

        let k1 = family::path(1).unwrap();
        assert_eq!(BranchDecomposition::trivial().f_width(&k1, &QCutRank), 0);
    }

    #[test]
    fn rooting_preserves_cuts() {
        let d = BranchDecomposition::caterpillar(6).unwrap();
        let unrooted = bipartitions(&d.enumerate_cuts());
        for cut_id in 0..d.enumerate_cuts().len() {
            let r = d.root_at_cut(cut_id).unwrap();
            assert_eq!(r.below(r.root()).len(), 6);
            assert_eq!(r.children(r.root()).len(), 2);
            let mut rooted = BTreeSet::new();
            for node in 0..r.node_count() {
                if node != r.root() {
                    let side: BTreeSet<usize> = if r.below(node).contains(0) {
                        r.below(node).iter().collect()
                    } else {
                        r.below(node).complement().iter().collect()
                    };
                    rooted.insert(side);
                }
            }
            // The full set {0..5} never appears: children of the root carry
            // the two orientations of the same bipartition.
            assert_eq!(rooted, unrooted, "cut {cut_id}");
        }
    }

    #[test]
    fn postorder_visits_children_first() {
        let d = BranchDecomposition::caterpillar(7).unwrap();
        let r = d.root_default();
        let mut seen = vec![false; r.node_count()];
        for &node in r.postorder() {
            for &c in r.children(node) {
                assert!(seen[c], "child {c} after parent {node}");
            }
            seen[node] = true;
        }
        assert_eq!(*r.postorder().last().unwrap(), r.root());
        assert_eq!(r.postorder().len(), r.node_count());
    }

    #[test]
    fn parse_basic_forms() {
        let d = parse_decomposition("((0,1),(2,3))", 4).unwrap();
        let cuts = bipartitions(&d.enumerate_cuts());
        assert!(cuts.contains(&[0, 1].into_iter().collect()));
        assert_eq!(d.node_count(), 6);

        assert_eq!(parse_decomposition("0", 1).unwrap().graph_n(), 1);
        assert_eq!(parse_decomposition("(0,1)", 2).unwrap().node_count(), 2);
        assert_eq!(parse_decomposition(" ( 0 , ( 1 , 2 ) ) ", 3).unwrap().graph_n(), 3);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            parse_decomposition("((0,1),(2,4))", 4),
            Err(DecompError::UnknownVertex { vertex: 4, n: 4 })
        ));
        assert!(matches!(
            parse_decomposition("((0,1),(2,1))", 4),
            Err(DecompError::RepeatedVertex { vertex: 1 })
        ));
        assert!(matches!(
            parse_decomposition("(0,1)", 3),
            Err(DecompError::MissingVertex { vertex: 2 })
        ));
        assert!(matches!(parse_decomposition("(0,1", 2), Err(DecompError::Parse { .. })));
        assert!(matches!(parse_decomposition("(0,)", 2), Err(DecompError::Parse { .. })));
        assert!(matches!(parse_decomposition("(0,1)x", 2), Err(DecompError::Parse { .. })));
        assert!(matches!(parse_decomposition("0", 2), Err(DecompError::MissingVertex { .. })));
        assert!(matches!(parse_decomposition("", 1), Err(DecompError::Parse { .. })));
    }

    #[test]
    fn serialize_then_parse_preserves_cuts() {
        for n in [1usize, 2, 3, 4, 6, 9] {
            let d = BranchDecomposition::caterpillar(n).unwrap();
            let text = serialize_decomposition(&d);
            let back = parse_decomposition(&text, n).unwrap();
            assert_eq!(
                bipartitions(&d.enumerate_cuts()),
                bipartitions(&back.enumerate_cuts()),
                "n = {n}, text = {text}"
            );
            // Canonical text is a fixed point.
            assert_eq!(serialize_decomposition(&back), text);
        }
        assert_eq!(serialize_decomposition(&BranchDecomposition::caterpillar(2).unwrap()), "(0,1)");
        assert_eq!(serialize_decomposition(&BranchDecomposition::trivial()), "0");
    }

    #[test]
    fn parsed_balanced_tree_widths_depend_on_the_pairing() {
        // On C4, pairing adjacent vertices leaves a rank-2 middle cut;
        // pairing opposite vertices is optimal.
        let c4 = family::cycle(4).unwrap();
        let d = parse_decomposition("((0,1),(2,3))", 4).unwrap();
        assert_eq!(d.f_width(&c4, &QCutRank), 2);
        let d = parse_decomposition("((0,2),(1,3))", 4).unwrap();
        assert_eq!(d.f_width(&c4, &QCutRank), 1);
    }
}
