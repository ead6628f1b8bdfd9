//! Generators for named graph families and seeded random graphs.
//!
//! The random constructions consume the crate PRNG in a fixed documented
//! order, so a (family, parameters, seed) triple names one exact graph:
//! `random_tree` attaches vertex v (for v = 1, 2, ..) to a parent drawn
//! uniformly from `0..v`, and `gnp` draws one Bernoulli(p) per vertex pair
//! in lexicographic order (0,1), (0,2), .., (n-2,n-1).

use crate::graph::Graph;
use crate::rng::Xorshift64Star;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("path needs at least 1 vertex, got {0}")]
    PathTooSmall(usize),
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("grid needs positive dimensions, got {rows}x{cols}")]
    GridEmpty { rows: usize, cols: usize },
    #[error("random tree needs at least 1 vertex, got {0}")]
    TreeTooSmall(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
}

pub fn path(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(FamilyError::PathTooSmall(n));
    }
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::CycleTooSmall(n));
    }
    let mut g = path(n).expect("n >= 3");
    g.add_edge(n - 1, 0);
    Ok(g)
}

/// `rows x cols` grid; vertex `(r, c)` has index `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph, FamilyError> {
    if rows == 0 || cols == 0 {
        return Err(FamilyError::GridEmpty { rows, cols });
    }
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.add_edge(v, v + 1);
            }
            if r + 1 < rows {
                g.add_edge(v, v + cols);
            }
        }
    }
    Ok(g)
}

/// Uniform-attachment random tree: vertex v joins a parent in `0..v`.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(FamilyError::TreeTooSmall(n));
    }
    let mut rng = Xorshift64Star::new(seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        let parent = rng.next_below(v as u64) as usize;
        g.add_edge(parent, v);
    }
    Ok(g)
}

/// Erdos-Renyi G(n, p) with one draw per pair in lexicographic order.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, FamilyError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(FamilyError::BadProbability(p));
    }
    let mut rng = Xorshift64Star::new(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Complete bipartite graph on part sizes `a` and `b`; the first part is
/// `0..a`. Used by tests and examples rather than the CLI.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}
