//! d-neighbour equivalence classes on one side of a cut.
//!
//! Fix a graph, a side `A` of a cut, and a depth `d >= 1`. Two subsets
//! `X, Y ⊆ A` are d-neighbour equivalent when every outside vertex
//! `v ∉ A` satisfies `min(d, |N(v) ∩ X|) = min(d, |N(v) ∩ Y|)`: seen from
//! the other side of the cut and counting neighbours only up to d, X and Y
//! are indistinguishable. The vector of those capped counts (outside
//! vertices in ascending order) is the subset's signature, so classes are
//! exactly signature fibers.
//!
//! Signatures add: for disjoint X and Y, the signature of `X ∪ Y` is the
//! capped coordinatewise sum, because `min(d, a + b)` only depends on
//! `min(d, a)` and `min(d, b)`. That makes classes discoverable by breadth
//! first search from the empty set (extending stored representatives one
//! vertex at a time and capping incrementally) and is what the solver later
//! exploits to combine child tables.
//!
//! The number of classes is tied to the cut's rank: with `k` the rank of
//! the cut matrix over Q, there are at most `(dk + 1)^k` classes, and every
//! class has a representative of size at most `dk` ([`reduce_representative`]
//! constructs one).

use crate::cutrank::{cut_rank, CutField};
use crate::decomp::BranchDecomposition;
use crate::graph::{Graph, VertexSet};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
#[error("class table for side of size {side_len} exceeded {limit} classes")]
pub struct ClassLimitExceeded {
    pub side_len: usize,
    pub limit: usize,
}

/// Capped signature of `x ⊆ side`: `min(d, |N(v) ∩ x|)` for each outside
/// vertex v, ascending.
pub fn signature(g: &Graph, side: &VertexSet, x: &VertexSet, d: u32) -> Vec<u32> {
    debug_assert!(x.is_subset(side));
    side.complement()
        .iter()
        .map(|v| (g.neighbors(v).intersection_len(x) as u32).min(d))
        .collect()
}

/// The d-neighbour equivalence classes of one cut side, indexed 0.. in
/// discovery order (class 0 is the empty set's).
pub struct ClassTable {
    side: VertexSet,
    outside: Vec<usize>,
    d: u32,
    reps: Vec<VertexSet>,
    sigs: Vec<Vec<u32>>,
    by_sig: HashMap<Vec<u32>, usize>,
}

impl ClassTable {
    pub fn build(g: &Graph, side: &VertexSet, d: u32) -> ClassTable {
        Self::build_limited(g, side, d, usize::MAX).expect("unlimited")
    }

    /// Breadth first search over subsets: extend each known class
    /// representative by one vertex and keep first-seen signatures. The
    /// additivity of capped signatures makes the reachable signatures
    /// closed under this, so the sweep finds every class.
    pub fn build_limited(
        g: &Graph,
        side: &VertexSet,
        d: u32,
        limit: usize,
    ) -> Result<ClassTable, ClassLimitExceeded> {
        assert!(d >= 1, "equivalence depth must be at least 1");
        let outside: Vec<usize> = side.complement().iter().collect();
        let mut table = ClassTable {
            side: side.clone(),
            outside,
            d,
            reps: Vec::new(),
            sigs: Vec::new(),
            by_sig: HashMap::new(),
        };
        let empty_sig = vec![0u32; table.outside.len()];
        table.push_class(VertexSet::empty(side.universe()), empty_sig);
        let mut frontier = 0usize;
        while frontier < table.reps.len() {
            let rep = table.reps[frontier].clone();
            let sig = table.sigs[frontier].clone();
            frontier += 1;
            for v in side.difference(&rep).iter() {
                let mut extended = sig.clone();
                for (j, &o) in table.outside.iter().enumerate() {
                    if g.has_edge(o, v) {
                        extended[j] = (extended[j] + 1).min(d);
                    }
                }
                if !table.by_sig.contains_key(&extended) {
                    if table.reps.len() >= limit {
                        return Err(ClassLimitExceeded { side_len: side.len(), limit });
                    }
                    let mut rep_v = rep.clone();
                    rep_v.insert(v);
                    table.push_class(rep_v, extended);
                }
            }
        }
        Ok(table)
    }

    fn push_class(&mut self, rep: VertexSet, sig: Vec<u32>) {
        self.by_sig.insert(sig.clone(), self.reps.len());
        self.reps.push(rep);
        self.sigs.push(sig);
    }

    pub fn side(&self) -> &VertexSet {
        &self.side
    }

    pub fn depth(&self) -> u32 {
        self.d
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn representative(&self, class: usize) -> &VertexSet {
        &self.reps[class]
    }

    pub fn signature_of(&self, class: usize) -> &[u32] {
        &self.sigs[class]
    }

    /// Class id of an arbitrary subset of the side.
    pub fn class_of(&self, g: &Graph, x: &VertexSet) -> Option<usize> {
        let sig = signature(g, &self.side, x, self.d);
        self.by_sig.get(&sig).copied()
    }

    /// Replaces each stored representative by another member of its class,
    /// the reduced one. Tables stay valid (same signatures, same ids);
    /// tests use this to confirm downstream results never depend on which
    /// member represents a class.
    pub fn reduce_representatives(&mut self, g: &Graph) {
        for i in 0..self.reps.len() {
            let reduced = reduce_representative(g, &self.side, &self.reps[i], self.d);
            debug_assert_eq!(signature(g, &self.side, &reduced, self.d), self.sigs[i]);
            self.reps[i] = reduced;
        }
    }
}

/// Number of d-neighbour equivalence classes of subsets of `side`.
pub fn nec_count(g: &Graph, side: &VertexSet, d: u32) -> usize {
    ClassTable::build(g, side, d).class_count()
}

/// `(d * k + 1)^k` with k the Q-cut-rank of the side: the guaranteed
/// ceiling on [`nec_count`], saturating at `u128::MAX`.
pub fn class_count_bound(g: &Graph, side: &VertexSet, d: u32) -> u128 {
    let k = cut_rank(g, side, CutField::Q) as u32;
    let base = (d as u128).saturating_mul(k as u128).saturating_add(1);
    let mut out: u128 = 1;
    for _ in 0..k {
        out = out.saturating_mul(base);
    }
    out
}

/// Max over all cuts of a decomposition of the class count, both
/// orientations considered. At most one vertex means one (empty) cut side,
/// so the width is 1.
pub fn nec_width(g: &Graph, decomposition: &BranchDecomposition, d: u32) -> usize {
    if g.n() <= 1 {
        return 1;
    }
    decomposition
        .enumerate_cuts()
        .iter()
        .map(|cut| {
            nec_count(g, &cut.side, d).max(nec_count(g, &cut.side.complement(), d))
        })
        .max()
        .expect("n >= 2 trees have cuts")
}

/// A small member of the d-neighbour class of `x`: at most `d * k` vertices
/// for a cut of Q-rank k.
///
/// Depth 1 is a single ascending deletion pass; any survivor keeps an
/// outside witness all of whose neighbours in the set were deleted except
/// the survivor itself, and those witness columns are independent, which is
/// where the size bound comes from. Larger depths split off a 1-equivalent
/// core and recurse on the rest: for disjoint pieces the capped counts add,
/// and the core alone already decides whether a coordinate is zero, so
/// replacing the rest by a (d-1)-equivalent set cannot cross the cap
/// boundary.
pub fn reduce_representative(g: &Graph, side: &VertexSet, x: &VertexSet, d: u32) -> VertexSet {
    assert!(d >= 1);
    if d == 1 {
        let mut r = x.clone();
        let base = signature(g, side, &r, 1);
        for v in x.iter() {
            let mut without = r.clone();
            without.remove(v);
            if signature(g, side, &without, 1) == base {
                r = without;
            }
        }
        return r;
    }
    let core = reduce_representative(g, side, x, 1);
    let rest = reduce_representative(g, side, &x.difference(&core), d - 1);
    core.union(&rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;
    use crate::rng::Xorshift64Star;

    /// Classes by direct enumeration of all subsets, for cross-checking.
    fn classes_by_enumeration(g: &Graph, side: &VertexSet, d: u32) -> usize {
        let members: Vec<usize> = side.iter().collect();
        assert!(members.len() <= 20);
        let mut sigs = std::collections::BTreeSet::new();
        for mask in 0u32..1 << members.len() {
            let x = VertexSet::from_vertices(
                side.universe(),
                members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v),
            );
            sigs.insert(signature(g, side, &x, d));
        }
        sigs.len()
    }

    fn random_subset(rng: &mut Xorshift64Star, of: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(of.universe(), of.iter().filter(|_| rng.next_bool(0.5)))
    }

    #[test]
    fn capping_is_a_monoid_law() {
        // min(d, a + b) is recoverable from the capped summands alone.
        for d in 1u32..=4 {
            for a in 0u32..=10 {
                for b in 0u32..=10 {
                    assert_eq!((a + b).min(d), (a.min(d) + b.min(d)).min(d));
                }
            }
        }
    }

    #[test]
    fn signatures_add_for_disjoint_sets() {
        let mut rng = Xorshift64Star::new(11);
        for _ in 0..100 {
            let n = 4 + rng.next_below(6) as usize;
            let g = family::gnp(n, 0.5, rng.next_u64()).unwrap();
            let side = random_subset(&mut rng, &VertexSet::full(n));
            let d = 1 + rng.next_below(3) as u32;
            let x = random_subset(&mut rng, &side);
            let y = random_subset(&mut rng, &side.difference(&x));
            let sx = signature(&g, &side, &x, d);
            let sy = signature(&g, &side, &y, d);
            let sxy = signature(&g, &side, &x.union(&y), d);
            let summed: Vec<u32> =
                sx.iter().zip(&sy).map(|(&a, &b)| (a + b).min(d)).collect();
            assert_eq!(sxy, summed);
        }
    }

    #[test]
    fn known_class_counts() {
        // Path 0-1-2 with side {0,1}: only vertex 2 watches, and it only
        // sees vertex 1.
        let p3 = family::path(3).unwrap();
        assert_eq!(nec_count(&p3, &VertexSet::from_vertices(3, [0, 1]), 1), 2);

        // C4 with side {0,2} at depth 2: both outside vertices see both of
        // 0 and 2, so {0} and {2} collapse; sizes 0, 1, 2 remain.
        let c4 = family::cycle(4).unwrap();
        assert_eq!(nec_count(&c4, &VertexSet::from_vertices(4, [0, 2]), 2), 3);

        // Star K_{1,3}, side = the three leaves, depth 2: the centre counts
        // leaves up to 2.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(nec_count(&star, &VertexSet::from_vertices(4, [1, 2, 3]), 2), 3);

        // Empty side: one class.
        assert_eq!(nec_count(&p3, &VertexSet::empty(3), 3), 1);
        // Full side: nobody watches, one class.
        assert_eq!(nec_count(&p3, &VertexSet::full(3), 1), 1);
    }

    #[test]
    fn deeper_equivalence_refines_shallower() {
        // In the bipartite graph of the 5x4 full-rank matrix, rows 1 and 3
        // have equal neighbourhoods: {row1} and {row1, row3} agree at depth
        // 1 but differ at depth 2.
        let rows = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 1, 1, 0], [0, 0, 0, 1]];
        let mut g = Graph::new(9);
        for (i, row) in rows.iter().enumerate() {
            for (j, &bit) in row.iter().enumerate() {
                if bit == 1 {
                    g.add_edge(i, 5 + j);
                }
            }
        }
        let side = VertexSet::from_vertices(9, 0..5);
        let x = VertexSet::from_vertices(9, [1]);
        let y = VertexSet::from_vertices(9, [1, 3]);
        assert_eq!(signature(&g, &side, &x, 1), signature(&g, &side, &y, 1));
        assert_ne!(signature(&g, &side, &x, 2), signature(&g, &side, &y, 2));
        assert!(nec_count(&g, &side, 2) > nec_count(&g, &side, 1));
    }

    #[test]
    fn bfs_enumeration_matches_direct_enumeration() {
        let mut rng = Xorshift64Star::new(505);
        for _ in 0..150 {
            let n = 2 + rng.next_below(8) as usize;
            let g = family::gnp(n, 0.4, rng.next_u64()).unwrap();
            let side = random_subset(&mut rng, &VertexSet::full(n));
            for d in 1..=3 {
                let table = ClassTable::build(&g, &side, d);
                assert_eq!(
                    table.class_count(),
                    classes_by_enumeration(&g, &side, d),
                    "{g:?} side {side} d {d}"
                );
                // Every stored representative looks itself up.
                for c in 0..table.class_count() {
                    assert_eq!(table.class_of(&g, table.representative(c)), Some(c));
                }
            }
        }
    }

    #[test]
    fn class_count_respects_rank_bound() {
        let mut rng = Xorshift64Star::new(99);
        for _ in 0..60 {
            let n = 3 + rng.next_below(7) as usize;
            let g = family::gnp(n, 0.5, rng.next_u64()).unwrap();
            let side = random_subset(&mut rng, &VertexSet::full(n));
            for d in 1..=3 {
                assert!(nec_count(&g, &side, d) as u128 <= class_count_bound(&g, &side, d));
            }
        }
    }

    #[test]
    fn build_limit_trips() {
        let g = family::complete(8);
        let side = VertexSet::from_vertices(8, 0..4);
        assert!(ClassTable::build_limited(&g, &side, 3, 2).is_err());
    }

    #[test]
    fn reduction_shrinks_and_preserves_class() {
        let mut rng = Xorshift64Star::new(31337);
        for _ in 0..200 {
            let n = 3 + rng.next_below(8) as usize;
            let g = family::gnp(n, 0.5, rng.next_u64()).unwrap();
            let side = random_subset(&mut rng, &VertexSet::full(n));
            let x = random_subset(&mut rng, &side);
            let k = cut_rank(&g, &side, CutField::Q);
            for d in 1..=3u32 {
                let r = reduce_representative(&g, &side, &x, d);
                assert!(r.is_subset(&x));
                assert_eq!(signature(&g, &side, &r, d), signature(&g, &side, &x, d));
                assert!(r.len() <= d as usize * k, "|r| = {}, d = {d}, k = {k}", r.len());
            }
        }
    }

    #[test]
    fn nec_width_of_path_caterpillar() {
        let p4 = family::path(4).unwrap();
        let d = BranchDecomposition::caterpillar(4).unwrap();
        assert_eq!(nec_width(&p4, &d, 1), 2);
        let k1 = family::path(1).unwrap();
        assert_eq!(nec_width(&k1, &BranchDecomposition::trivial(), 1), 1);
    }

    #[test]
    fn reduced_tables_answer_like_original_tables() {
        let mut rng = Xorshift64Star::new(808);
        for _ in 0..40 {
            let n = 3 + rng.next_below(6) as usize;
            let g = family::gnp(n, 0.5, rng.next_u64()).unwrap();
            let side = random_subset(&mut rng, &VertexSet::full(n));
            let d = 1 + rng.next_below(3) as u32;
            let plain = ClassTable::build(&g, &side, d);
            let mut reduced = ClassTable::build(&g, &side, d);
            reduced.reduce_representatives(&g);
            assert_eq!(plain.class_count(), reduced.class_count());
            for _ in 0..10 {
                let x = random_subset(&mut rng, &side);
                assert_eq!(plain.class_of(&g, &x), reduced.class_of(&g, &x));
            }
        }
    }
}
