//! Finding low-width branch decompositions.
//!
//! [`exact_decomposition`] computes the true f-width by dynamic programming
//! over vertex subsets: `rec(A)` is the best achievable maximum of f over
//! the cuts of a subtree shattering A, i.e. `f(A)` joined with the best
//! `max(rec(B), rec(A ∖ B))` over bipartitions of A. Every subset of `V`
//! is a memo slot, every bipartition a candidate, so the work is Theta(3^n)
//! and the vertex count is capped (13 by default, 20 at most). Splits fix
//! the side containing the smallest vertex to halve the enumeration, and a
//! witness tree is rebuilt from the recorded best splits.
//!
//! [`greedy_decomposition`] recursively bisects the vertex set instead:
//! from a seeded random balanced split it hill-climbs with single moves and
//! swaps, steepest first, minimizing `(max(f(B), f(C)), imbalance)`
//! lexicographically; sides never shrink below a third of the current set.
//! The result is a valid decomposition of whatever width the climb reached,
//! always an upper bound for the exact width.

use crate::cutrank::CutFunction;
use crate::decomp::BranchDecomposition;
use crate::graph::{Graph, VertexSet};
use crate::rng::Xorshift64Star;
use std::collections::HashMap;
use thiserror::Error;

pub const DEFAULT_EXACT_CAP: usize = 13;
pub const EXACT_HARD_CAP: usize = 20;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("decomposition search needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("graph has {n} vertices, exact search is capped at {cap} (raise with --cap, up to {EXACT_HARD_CAP})")]
    TooLarge { n: usize, cap: usize },
    #[error("cap {0} exceeds the hard limit {EXACT_HARD_CAP} for the 3^n subset sweep")]
    CapTooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Exact,
    Greedy,
}

impl SearchMethod {
    pub fn label(self) -> &'static str {
        match self {
            SearchMethod::Exact => "exact",
            SearchMethod::Greedy => "greedy",
        }
    }
}

pub struct SearchResult {
    pub decomposition: BranchDecomposition,
    pub width: usize,
    pub method: SearchMethod,
    /// Whether `width` is known to be the graph's true f-width.
    pub optimal: bool,
}

fn mask_to_set(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|v| mask >> v & 1 == 1))
}

/// Minimum-width decomposition by the 3^n subset sweep. Requires
/// `2 <= n <= cap <= EXACT_HARD_CAP`.
pub fn exact_decomposition(
    g: &Graph,
    f: &dyn CutFunction,
    cap: usize,
) -> Result<SearchResult, SearchError> {
    let n = g.n();
    if n < 2 {
        return Err(SearchError::TooSmall(n));
    }
    if cap > EXACT_HARD_CAP {
        return Err(SearchError::CapTooLarge(cap));
    }
    if n > cap {
        return Err(SearchError::TooLarge { n, cap });
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    // f on every subset; complements share a value.
    let mut fval = vec![u16::MAX; full as usize + 1];
    for mask in 0..=full {
        let comp = full ^ mask;
        fval[mask as usize] = if fval[comp as usize] != u16::MAX {
            fval[comp as usize]
        } else {
            f.eval(g, &mask_to_set(n, mask)) as u16
        };
    }

    let mut rec = vec![0u16; full as usize + 1];
    let mut split = vec![0u32; full as usize + 1];
    for mask in 1..=full {
        if mask.count_ones() == 1 {
            rec[mask as usize] = fval[mask as usize];
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let mut best = u16::MAX;
        let mut best_sub = 0u32;
        // Proper non-empty submasks, pinned to contain the lowest vertex.
        let mut sub = (mask - 1) & mask;
        while sub != 0 {
            if sub & low != 0 {
                let other = mask ^ sub;
                let cand = rec[sub as usize].max(rec[other as usize]);
                if cand < best {
                    best = cand;
                    best_sub = sub;
                }
            }
            sub = (sub - 1) & mask;
        }
        rec[mask as usize] = fval[mask as usize].max(best);
        split[mask as usize] = best_sub;
    }

    // Rebuild the witness tree from the stored splits. Subsets become
    // subtrees; the top split becomes the edge joining the two halves.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut assignments: Vec<(usize, usize)> = Vec::new();
    let mut next_node = 0usize;
    fn build(
        mask: u32,
        split: &[u32],
        next_node: &mut usize,
        edges: &mut Vec<(usize, usize)>,
        assignments: &mut Vec<(usize, usize)>,
    ) -> usize {
        let node = *next_node;
        *next_node += 1;
        if mask.count_ones() == 1 {
            assignments.push((node, mask.trailing_zeros() as usize));
            return node;
        }
        let a = split[mask as usize];
        let left = build(a, split, next_node, edges, assignments);
        edges.push((node, left));
        let right = build(mask ^ a, split, next_node, edges, assignments);
        edges.push((node, right));
        node
    }
    let top = split[full as usize];
    let left = build(top, &split, &mut next_node, &mut edges, &mut assignments);
    let right = build(full ^ top, &split, &mut next_node, &mut edges, &mut assignments);
    edges.push((left, right));
    let decomposition = BranchDecomposition::from_parts(n, next_node, &edges, &assignments)
        .expect("exact search builds valid trees");
    let width = rec[full as usize] as usize;
    debug_assert_eq!(decomposition.f_width(g, f), width);
    Ok(SearchResult { decomposition, width, method: SearchMethod::Exact, optimal: true })
}

/// Cache of f values keyed by the cut side that avoids evaluating a
/// bipartition twice (either orientation hits the same slot).
struct CutCache<'a> {
    f: &'a dyn CutFunction,
    values: HashMap<VertexSet, usize>,
}

impl<'a> CutCache<'a> {
    fn new(f: &'a dyn CutFunction) -> Self {
        CutCache { f, values: HashMap::new() }
    }

    fn eval(&mut self, g: &Graph, side: &VertexSet) -> usize {
        let key = if side.contains(0) { side.complement() } else { side.clone() };
        if let Some(&v) = self.values.get(&key) {
            return v;
        }
        let v = self.f.eval(g, &key);
        self.values.insert(key, v);
        v
    }
}

/// Heuristic decomposition by recursive seeded bisection; see the module
/// notes for the climb's objective. Deterministic for a given seed.
pub fn greedy_decomposition(
    g: &Graph,
    f: &dyn CutFunction,
    seed: u64,
) -> Result<SearchResult, SearchError> {
    let n = g.n();
    if n < 2 {
        return Err(SearchError::TooSmall(n));
    }
    let mut rng = Xorshift64Star::new(seed);
    let mut cache = CutCache::new(f);

    fn bisect(
        g: &Graph,
        set: &VertexSet,
        rng: &mut Xorshift64Star,
        cache: &mut CutCache,
    ) -> (VertexSet, VertexSet) {
        let members = set.to_vec();
        let len = members.len();
        debug_assert!(len >= 2);
        let mut shuffled = members.clone();
        rng.shuffle(&mut shuffled);
        let mut b = VertexSet::from_vertices(set.universe(), shuffled[..len.div_ceil(2)].iter().copied());
        let mut c = set.difference(&b);
        if len == 2 {
            return (b, c);
        }
        let floor = len.div_ceil(3);
        let objective = |cache: &mut CutCache, g: &Graph, x: &VertexSet, y: &VertexSet| {
            let w = cache.eval(g, x).max(cache.eval(g, y));
            (w, x.len().abs_diff(y.len()))
        };
        let mut current = objective(cache, g, &b, &c);
        loop {
            let mut best = current;
            let mut best_pair: Option<(VertexSet, VertexSet)> = None;
            // Swaps first: on ties in the objective they win, keeping the
            // sides balanced while the width improves.
            for u in b.iter() {
                for v in c.iter() {
                    let mut nb = b.clone();
                    nb.remove(u);
                    nb.insert(v);
                    let nc = set.difference(&nb);
                    let cand = objective(cache, g, &nb, &nc);
                    if cand < best {
                        best = cand;
                        best_pair = Some((nb, nc));
                    }
                }
            }
            for (from_b, moved) in [(true, b.clone()), (false, c.clone())] {
                let donor_len = if from_b { b.len() } else { c.len() };
                if donor_len - 1 < floor {
                    continue;
                }
                for u in moved.iter() {
                    let mut nb = b.clone();
                    if from_b {
                        nb.remove(u);
                    } else {
                        nb.insert(u);
                    }
                    let nc = set.difference(&nb);
                    let cand = objective(cache, g, &nb, &nc);
                    if cand < best {
                        best = cand;
                        best_pair = Some((nb, nc));
                    }
                }
            }
            match best_pair {
                Some((nb, nc)) => {
                    b = nb;
                    c = nc;
                    current = best;
                }
                None => return (b, c),
            }
        }
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut assignments: Vec<(usize, usize)> = Vec::new();
    let mut next_node = 0usize;
    fn build(
        g: &Graph,
        set: &VertexSet,
        rng: &mut Xorshift64Star,
        cache: &mut CutCache,
        next_node: &mut usize,
        edges: &mut Vec<(usize, usize)>,
        assignments: &mut Vec<(usize, usize)>,
    ) -> usize {
        let node = *next_node;
        *next_node += 1;
        if set.len() == 1 {
            assignments.push((node, set.first().expect("nonempty")));
            return node;
        }
        let (b, c) = bisect(g, set, rng, cache);
        let left = build(g, &b, rng, cache, next_node, edges, assignments);
        edges.push((node, left));
        let right = build(g, &c, rng, cache, next_node, edges, assignments);
        edges.push((node, right));
        node
    }

    let all = VertexSet::full(n);
    let (b, c) = bisect(g, &all, &mut rng, &mut cache);
    let left = build(g, &b, &mut rng, &mut cache, &mut next_node, &mut edges, &mut assignments);
    let right = build(g, &c, &mut rng, &mut cache, &mut next_node, &mut edges, &mut assignments);
    edges.push((left, right));
    let decomposition = BranchDecomposition::from_parts(n, next_node, &edges, &assignments)
        .expect("greedy builds valid trees");
    let width = decomposition.f_width(g, f);
    // With up to 3 vertices every subcubic tree has the same single shape.
    let optimal = n <= 3;
    Ok(SearchResult { decomposition, width, method: SearchMethod::Greedy, optimal })
}

/// Exact search when the graph fits under `cap`, greedy otherwise; the
/// one-vertex graph gets the trivial tree.
pub fn find_decomposition(
    g: &Graph,
    f: &dyn CutFunction,
    cap: usize,
    seed: u64,
) -> Result<SearchResult, SearchError> {
    let n = g.n();
    if n == 0 {
        return Err(SearchError::TooSmall(0));
    }
    if n == 1 {
        return Ok(SearchResult {
            decomposition: BranchDecomposition::trivial(),
            width: f.eval(g, &VertexSet::empty(1)),
            method: SearchMethod::Exact,
            optimal: true,
        });
    }
    if n <= cap.min(EXACT_HARD_CAP) {
        exact_decomposition(g, f, cap)
    } else {
        greedy_decomposition(g, f, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutrank::{Gf2CutRank, QCutRank};
    use crate::decomp::serialize_decomposition;
    use crate::family;

    fn exact_width(g: &Graph) -> usize {
        exact_decomposition(g, &QCutRank, DEFAULT_EXACT_CAP).unwrap().width
    }

    #[test]
    fn known_exact_widths() {
        assert_eq!(exact_width(&family::path(4).unwrap()), 1);
        assert_eq!(exact_width(&family::path(2).unwrap()), 1);
        assert_eq!(exact_width(&family::cycle(3).unwrap()), 1);
        assert_eq!(exact_width(&family::cycle(4).unwrap()), 1);
        assert_eq!(exact_width(&family::cycle(5).unwrap()), 2);
        assert_eq!(exact_width(&family::cycle(6).unwrap()), 2);
        assert_eq!(exact_width(&family::complete(4)), 1);
        assert_eq!(exact_width(&family::complete_bipartite(3, 3)), 1);
        assert_eq!(exact_width(&family::grid(3, 3).unwrap()), 2);
        assert_eq!(exact_width(&Graph::new(3)), 0);
    }

    #[test]
    fn exact_width_over_gf2() {
        let r = exact_decomposition(&family::cycle(5).unwrap(), &Gf2CutRank, 13).unwrap();
        assert_eq!(r.width, 2);
        assert_eq!(r.decomposition.f_width(&family::cycle(5).unwrap(), &Gf2CutRank), 2);
    }

    #[test]
    fn exact_result_is_a_valid_witness() {
        let g = family::gnp(7, 0.5, 99).unwrap();
        let r = exact_decomposition(&g, &QCutRank, 13).unwrap();
        assert!(r.optimal);
        assert_eq!(r.method, SearchMethod::Exact);
        assert_eq!(r.decomposition.graph_n(), 7);
        assert_eq!(r.decomposition.f_width(&g, &QCutRank), r.width);
        // Round-trips through the text codec.
        let text = serialize_decomposition(&r.decomposition);
        let back = crate::decomp::parse_decomposition(&text, 7).unwrap();
        assert_eq!(back.f_width(&g, &QCutRank), r.width);
    }

    #[test]
    fn exact_bounds() {
        assert!(matches!(
            exact_decomposition(&family::path(1).unwrap(), &QCutRank, 13),
            Err(SearchError::TooSmall(1))
        ));
        assert!(matches!(
            exact_decomposition(&family::path(14).unwrap(), &QCutRank, 13),
            Err(SearchError::TooLarge { n: 14, cap: 13 })
        ));
        assert!(matches!(
            exact_decomposition(&family::path(3).unwrap(), &QCutRank, 21),
            Err(SearchError::CapTooLarge(21))
        ));
        // Raising the cap legitimately works.
        assert_eq!(exact_decomposition(&family::path(14).unwrap(), &QCutRank, 14).unwrap().width, 1);
    }

    #[test]
    fn trees_have_width_one() {
        for seed in 0..10 {
            let g = family::random_tree(8, seed).unwrap();
            assert_eq!(exact_width(&g), 1, "seed {seed}");
        }
    }

    #[test]
    fn greedy_finds_the_complete_bipartite_optimum() {
        let g = family::complete_bipartite(3, 3);
        for seed in 0..8 {
            let r = greedy_decomposition(&g, &QCutRank, seed).unwrap();
            assert_eq!(r.width, 1, "seed {seed}");
            assert_eq!(r.method, SearchMethod::Greedy);
        }
    }

    #[test]
    fn greedy_is_deterministic_and_valid() {
        let g = family::gnp(12, 0.4, 7).unwrap();
        let a = greedy_decomposition(&g, &QCutRank, 3).unwrap();
        let b = greedy_decomposition(&g, &QCutRank, 3).unwrap();
        assert_eq!(a.width, b.width);
        assert_eq!(
            serialize_decomposition(&a.decomposition),
            serialize_decomposition(&b.decomposition)
        );
        assert_eq!(a.decomposition.f_width(&g, &QCutRank), a.width);
    }

    #[test]
    fn greedy_never_beats_exact() {
        for seed in 0..30 {
            let n = 4 + (seed as usize % 5);
            let g = family::gnp(n, 0.5, seed).unwrap();
            let exact = exact_width(&g);
            let greedy = greedy_decomposition(&g, &QCutRank, seed).unwrap().width;
            assert!(greedy >= exact, "greedy {greedy} < exact {exact} on {g:?}");
        }
    }

    #[test]
    fn greedy_small_cases() {
        let g = family::path(2).unwrap();
        let r = greedy_decomposition(&g, &QCutRank, 0).unwrap();
        assert_eq!(r.width, 1);
        assert!(r.optimal);
        let g = family::path(3).unwrap();
        assert_eq!(greedy_decomposition(&g, &QCutRank, 0).unwrap().width, 1);
    }

    #[test]
    fn find_decomposition_picks_method_by_size() {
        let small = family::cycle(6).unwrap();
        assert_eq!(find_decomposition(&small, &QCutRank, 13, 0).unwrap().method, SearchMethod::Exact);
        let big = family::cycle(17).unwrap();
        let r = find_decomposition(&big, &QCutRank, 13, 0).unwrap();
        assert_eq!(r.method, SearchMethod::Greedy);
        assert!(!r.optimal);
        let k1 = family::path(1).unwrap();
        let r = find_decomposition(&k1, &QCutRank, 13, 0).unwrap();
        assert_eq!(r.width, 0);
        assert!(r.optimal);
    }
}
