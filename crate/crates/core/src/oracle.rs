//! Brute-force reference implementations.
//!
//! Everything here recomputes from first principles, sharing problem and
//! graph *data* with the fast paths but none of their machinery: no class
//! tables, no capped counts, no dynamic programming, no subset memoization.
//! The test suite holds the fast implementations to these at small sizes.

use crate::cutrank::CutFunction;
use crate::graph::{Graph, VertexSet};
use crate::problems::{Constraint, IntSet, Objective, ProblemSpec};
use crate::solver::SolveOutcome;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("brute force over {space} states refused (limit {limit})")]
    TooLarge { space: u128, limit: u128 },
}

const ASSIGNMENT_LIMIT: u128 = 10_000_000;
const SUBSET_SIDE_LIMIT: usize = 20;
const SHAPE_VERTEX_LIMIT: usize = 8;

fn check_space(space: u128, limit: u128) -> Result<(), OracleError> {
    if space > limit {
        return Err(OracleError::TooLarge { space, limit });
    }
    Ok(())
}

fn int_set_contains(set: &IntSet, x: u32) -> bool {
    // Deliberately rebuilt here instead of calling IntSet::contains.
    match set {
        IntSet::Finite(values) => values.contains(&x),
        IntSet::Cofinite(excluded) => !excluded.contains(&x),
    }
}

fn assignment_feasible(g: &Graph, matrix: &[Vec<IntSet>], assignment: &[usize]) -> bool {
    let q = matrix.len();
    for v in 0..g.n() {
        let mut counts = vec![0u32; q];
        for w in g.neighbors(v).iter() {
            counts[assignment[w]] += 1;
        }
        for j in 0..q {
            if !int_set_contains(&matrix[assignment[v]][j], counts[j]) {
                return false;
            }
        }
    }
    true
}

/// Optimum by enumerating every assignment of vertices to parts: all
/// `2^n` subsets for (sigma, rho) problems, all `q^n` partitions
/// otherwise. The witness is the first optimum in lexicographic order.
pub fn brute_solve(g: &Graph, spec: &ProblemSpec) -> Result<SolveOutcome, OracleError> {
    let n = g.n();
    let q = spec.parts();
    let space = (q as u128).saturating_pow(n as u32);
    check_space(space, ASSIGNMENT_LIMIT)?;
    let matrix = match &spec.constraint {
        Constraint::SigmaRho { sigma, rho } => vec![
            vec![sigma.clone(), IntSet::Cofinite(Vec::new())],
            vec![rho.clone(), IntSet::Cofinite(Vec::new())],
        ],
        Constraint::Matrix(m) => m.clone(),
    };
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut assignment = vec![0usize; n];
    loop {
        if assignment_feasible(g, &matrix, &assignment) {
            let value = assignment.iter().filter(|&&p| p == 0).count();
            let improves = match (&best, spec.objective) {
                (None, _) => true,
                (Some((b, _)), Objective::Maximize) => value > *b,
                (Some((b, _)), _) => value < *b,
            };
            if improves {
                best = Some((value, assignment.clone()));
            }
        }
        // Odometer increment over base q; empty graphs get one (empty) try.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(match best {
                    Some((value, assignment)) => SolveOutcome::Optimal { value, assignment },
                    None => SolveOutcome::Infeasible,
                });
            }
            assignment[i] += 1;
            if assignment[i] < q {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Number of d-neighbour classes by enumerating every subset of the side
/// and grouping raw signature vectors.
pub fn brute_nec_classes(g: &Graph, side: &VertexSet, d: u32) -> Result<usize, OracleError> {
    let members: Vec<usize> = side.iter().collect();
    check_space(members.len() as u128, SUBSET_SIDE_LIMIT as u128)?;
    let outside: Vec<usize> = side.complement().iter().collect();
    let mut signatures = std::collections::BTreeSet::new();
    for mask in 0u64..1 << members.len() {
        let sig: Vec<u32> = outside
            .iter()
            .map(|&v| {
                let mut count = 0u32;
                for (i, &u) in members.iter().enumerate() {
                    if mask >> i & 1 == 1 && g.has_edge(v, u) {
                        count += 1;
                    }
                }
                count.min(d)
            })
            .collect();
        signatures.insert(sig);
    }
    Ok(signatures.len())
}

/// Exact f-width by trying every decomposition shape: unrooted subcubic
/// trees with n labeled leaves, generated by iteratively attaching each
/// next leaf onto every existing edge. (2n-5)!! shapes, so n is capped
/// low; this cross-checks the subset DP, which scales further.
pub fn brute_width_by_tree_shapes(
    g: &Graph,
    f: &dyn CutFunction,
) -> Result<usize, OracleError> {
    let n = g.n();
    check_space(n as u128, SHAPE_VERTEX_LIMIT as u128)?;
    if n <= 1 {
        return Ok(f.eval(g, &VertexSet::empty(n)));
    }
    if n == 2 {
        return Ok(f.eval(g, &VertexSet::singleton(2, 0)));
    }
    // Edge lists over nodes: leaves are 0..n, internal nodes allocated from
    // n upward. Start from the leaf pair {0, 1} and insert leaf k by
    // subdividing each edge in turn.
    // (next leaf to insert, tree edges so far, next internal node id)
    type ShapeFrame = (usize, Vec<(usize, usize)>, usize);
    let mut widths: Vec<usize> = Vec::new();
    let mut stack: Vec<ShapeFrame> = vec![(2, vec![(0, 1)], n)];
    while let Some((next_leaf, edges, next_internal)) = stack.pop() {
        if next_leaf == n {
            widths.push(width_of_shape(g, f, &edges));
            continue;
        }
        for i in 0..edges.len() {
            let (a, b) = edges[i];
            let mut extended = edges.clone();
            let mid = next_internal;
            extended[i] = (a, mid);
            extended.push((mid, b));
            extended.push((mid, next_leaf));
            stack.push((next_leaf + 1, extended, next_internal + 1));
        }
    }
    Ok(widths.into_iter().min().expect("at least one shape"))
}

fn width_of_shape(g: &Graph, f: &dyn CutFunction, edges: &[(usize, usize)]) -> usize {
    let n = g.n();
    let node_count = edges.len() + 1;
    let mut adj = vec![Vec::new(); node_count];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // For each edge, the leaves on one side via DFS avoiding the edge.
    let mut best = 0;
    for &(a, b) in edges {
        let mut side = VertexSet::empty(n);
        let mut stack = vec![a];
        let mut seen = vec![false; node_count];
        seen[a] = true;
        seen[b] = true;
        while let Some(x) = stack.pop() {
            if x < n {
                side.insert(x);
            }
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        best = best.max(f.eval(g, &side));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutrank::QCutRank;
    use crate::family;
    use crate::nec::nec_count;
    use crate::problems::catalog_lookup;
    use crate::rng::Xorshift64Star;
    use crate::search::exact_decomposition;

    #[test]
    fn brute_solve_known_values() {
        let dom = catalog_lookup("dominating-set").unwrap();
        let got = brute_solve(&family::path(3).unwrap(), &dom).unwrap();
        assert!(matches!(got, SolveOutcome::Optimal { value: 1, .. }));
        let ind = catalog_lookup("independent-set").unwrap();
        let got = brute_solve(&family::cycle(5).unwrap(), &ind).unwrap();
        assert!(matches!(got, SolveOutcome::Optimal { value: 2, .. }));
        let code = catalog_lookup("perfect-code").unwrap();
        assert_eq!(brute_solve(&family::cycle(4).unwrap(), &code).unwrap(), SolveOutcome::Infeasible);
    }

    #[test]
    fn brute_solve_handles_the_empty_graph() {
        let dom = catalog_lookup("dominating-set").unwrap();
        let got = brute_solve(&Graph::new(0), &dom).unwrap();
        assert!(matches!(got, SolveOutcome::Optimal { value: 0, .. }));
    }

    #[test]
    fn space_guards() {
        let dom = catalog_lookup("dominating-set").unwrap();
        assert!(brute_solve(&Graph::new(40), &dom).is_err());
        assert!(brute_nec_classes(&Graph::new(30), &VertexSet::full(30), 1).is_err());
        assert!(brute_width_by_tree_shapes(&Graph::new(9), &QCutRank).is_err());
    }

    #[test]
    fn nec_brute_agrees_with_class_tables() {
        let mut rng = Xorshift64Star::new(6060);
        for _ in 0..80 {
            let n = 2 + rng.next_below(8) as usize;
            let g = family::gnp(n, 0.45, rng.next_u64()).unwrap();
            let side =
                VertexSet::from_vertices(n, (0..n).filter(|_| rng.next_bool(0.5)));
            for d in 1..=3 {
                assert_eq!(
                    brute_nec_classes(&g, &side, d).unwrap(),
                    nec_count(&g, &side, d),
                    "{g:?} side {side} d {d}"
                );
            }
        }
    }

    #[test]
    fn shape_enumeration_counts_and_matches_subset_dp() {
        // (2n-5)!! shapes: 3 for n=4, 15 for n=5.
        let g4 = family::cycle(4).unwrap();
        assert_eq!(brute_width_by_tree_shapes(&g4, &QCutRank).unwrap(), 1);
        let g5 = family::cycle(5).unwrap();
        assert_eq!(brute_width_by_tree_shapes(&g5, &QCutRank).unwrap(), 2);

        let mut rng = Xorshift64Star::new(314);
        for _ in 0..25 {
            let n = 4 + rng.next_below(4) as usize;
            let g = family::gnp(n, 0.5, rng.next_u64()).unwrap();
            let by_shapes = brute_width_by_tree_shapes(&g, &QCutRank).unwrap();
            let by_dp = exact_decomposition(&g, &QCutRank, 13).unwrap().width;
            assert_eq!(by_shapes, by_dp, "{g:?}");
        }
    }

    #[test]
    fn brute_tiny_graphs() {
        let dom = catalog_lookup("dominating-set").unwrap();
        let got = brute_solve(&family::path(1).unwrap(), &dom).unwrap();
        assert!(matches!(got, SolveOutcome::Optimal { value: 1, .. }));
        assert_eq!(brute_nec_classes(&family::path(2).unwrap(), &VertexSet::empty(2), 2).unwrap(), 1);
        assert_eq!(brute_width_by_tree_shapes(&family::path(2).unwrap(), &QCutRank).unwrap(), 1);
        assert_eq!(brute_width_by_tree_shapes(&family::path(1).unwrap(), &QCutRank).unwrap(), 0);
    }
}
