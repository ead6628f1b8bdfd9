//! Dynamic programming for locally checkable problems over a rooted branch
//! decomposition.
//!
//! Fix a problem with q parts and counting depth d (at least 1). For a tree
//! node w, call `below(w)` the inner side and its complement the outer
//! side, and build the d-neighbour class tables of both. A partial solution
//! at w is a q-tuple of inner classes: coordinate j is the class of
//! `part j ∩ below(w)`. What the outside will eventually contribute is a
//! q-tuple of outer classes. The DP table at w maps (inner tuple, outer
//! tuple) to the best part-0 size achievable below w, with explicit bottom
//! entries for infeasible combinations; correctness rests on capped
//! neighbour counts being class invariants, so any representative stands in
//! for the real set.
//!
//! Leaves check the actual constraint: vertex v in part i is consistent
//! with outer expectation o_j by testing `min(d, |N(v) ∩ R|)` against
//! `D[i][j]` for the representative R of o_j; v is the only watcher of the
//! cut `({v}, rest)`, so the test does not depend on the choice of R.
//! A join node w with children a and b uses three coordinate-wise
//! combination maps, each defined on classes and computed on
//! representatives: the classes of `X_a ∪ X_b` (inner combine), of
//! `X_b ∪ X_outer` seen from a, and of `X_a ∪ X_outer` seen from b (the
//! down maps). Disjoint unions add capped signatures, which makes all three
//! well defined. The root's outer side is empty, one trivial class, and the
//! best root entry wins; its witness is rebuilt by walking the recorded
//! back pointers and is verified against the literal constraints before
//! being returned.

use crate::decomp::RootedDecomposition;
use crate::graph::{Graph, VertexSet};
use crate::nec::ClassTable;
use crate::problems::{verify_solution, IntSet, Objective, ProblemSpec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("decomposition is over {decomp_n} vertices, graph has {graph_n}")]
    Mismatch { decomp_n: usize, graph_n: usize },
    #[error("problem has {0} parts, solver supports up to 255")]
    TooManyParts(usize),
    #[error("DP tables would exceed the limit of {limit} {what}")]
    TablesTooLarge { limit: usize, what: &'static str },
    #[error("internal solver error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Best value of `|part 0|` together with a full witness partition
    /// (vertex index to part index).
    Optimal { value: usize, assignment: Vec<usize> },
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Per-side ceiling on d-neighbour classes.
    pub class_limit: usize,
    /// Per-node ceiling on table entries (tuples x outer combinations).
    pub entry_limit: usize,
    /// Swap every class representative for its reduced form before running
    /// the DP. Results must not change; tests flip this to prove it.
    pub reduce_representatives: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { class_limit: 100_000, entry_limit: 4_000_000, reduce_representatives: false }
    }
}

pub fn solve(
    g: &Graph,
    rooted: &RootedDecomposition,
    spec: &ProblemSpec,
) -> Result<SolveOutcome, SolverError> {
    solve_with_options(g, rooted, spec, &SolveOptions::default())
}

const UNSET: u32 = u32::MAX;

#[derive(Clone, Copy)]
enum Back {
    None,
    Leaf(u8),
    Join(u32, u32),
}

#[derive(Clone, Copy)]
struct Entry {
    value: u32,
    back: Back,
}

struct NodeState {
    tables: NodeTables,
    /// Realizable inner q-tuples in first-seen order.
    tuples: Vec<Vec<u32>>,
    /// `entries[tuple][outer_id]`, outer ids in mixed radix over the outer
    /// class count.
    entries: Vec<Vec<Entry>>,
    /// For join nodes: children ids and the two down maps,
    /// `down_a[b_inner_class][w_outer_class] -> a_outer_class` and its
    /// mirror image.
    join: Option<JoinMaps>,
}

struct JoinMaps {
    a: usize,
    b: usize,
    down_a: Vec<Vec<u32>>,
    down_b: Vec<Vec<u32>>,
}

struct NodeTables {
    inner: ClassTable,
    outer: ClassTable,
}

fn build_tables(
    g: &Graph,
    side: &VertexSet,
    d: u32,
    opts: &SolveOptions,
) -> Result<ClassTable, SolverError> {
    let mut t = ClassTable::build_limited(g, side, d, opts.class_limit)
        .map_err(|_| SolverError::TablesTooLarge { limit: opts.class_limit, what: "classes" })?;
    if opts.reduce_representatives {
        t.reduce_representatives(g);
    }
    Ok(t)
}

/// Composes a mixed-radix outer tuple id digit by digit.
fn outer_digits(mut id: usize, radix: usize, q: usize, out: &mut Vec<u32>) {
    out.clear();
    for _ in 0..q {
        out.push((id % radix) as u32);
        id /= radix;
    }
}

#[allow(clippy::needless_range_loop)] // outer ids are decomposed into digits, not just indexed
pub fn solve_with_options(
    g: &Graph,
    rooted: &RootedDecomposition,
    spec: &ProblemSpec,
    opts: &SolveOptions,
) -> Result<SolveOutcome, SolverError> {
    if rooted.graph_n() != g.n() {
        return Err(SolverError::Mismatch { decomp_n: rooted.graph_n(), graph_n: g.n() });
    }
    let q = spec.parts();
    if q > 255 {
        return Err(SolverError::TooManyParts(q));
    }
    let matrix = spec.matrix_view();
    let d = spec.depth().max(1);
    let maximize = spec.objective == Objective::Maximize;
    let better = |new: u32, old: u32| old == UNSET || if maximize { new > old } else { new < old };

    let internal = |msg: &str| SolverError::Internal(msg.to_string());

    let mut states: Vec<Option<NodeState>> = (0..rooted.node_count()).map(|_| None).collect();
    let mut digit_buf = Vec::with_capacity(q);

    for &w in rooted.postorder() {
        let inner = build_tables(g, rooted.below(w), d, opts)?;
        let outer = build_tables(g, &rooted.below(w).complement(), d, opts)?;
        let radix = outer.class_count();
        let outer_total = radix
            .checked_pow(q as u32)
            .filter(|&t| t <= opts.entry_limit)
            .ok_or(SolverError::TablesTooLarge { limit: opts.entry_limit, what: "outer combinations" })?;
        let tables = NodeTables { inner, outer };

        let mut tuples: Vec<Vec<u32>> = Vec::new();
        let mut tuple_index: std::collections::HashMap<Vec<u32>, usize> =
            std::collections::HashMap::new();
        let mut entries: Vec<Vec<Entry>> = Vec::new();
        let mut intern = |t: Vec<u32>, entries: &mut Vec<Vec<Entry>>| -> usize {
            *tuple_index.entry(t.clone()).or_insert_with(|| {
                tuples.push(t);
                entries.push(vec![Entry { value: UNSET, back: Back::None }; outer_total]);
                tuples.len() - 1
            })
        };

        let join = if let Some(v) = rooted.vertex_of_node(w) {
            // Leaf: one candidate tuple per part choice for v.
            let cls_empty = tables
                .inner
                .class_of(g, &VertexSet::empty(g.n()))
                .ok_or_else(|| internal("empty set not in class table"))? as u32;
            let cls_v = tables
                .inner
                .class_of(g, &VertexSet::singleton(g.n(), v))
                .ok_or_else(|| internal("singleton not in class table"))? as u32;
            // Capped count of v's neighbours in each outer representative;
            // invariant across the representative choice.
            let capped: Vec<u32> = (0..radix)
                .map(|c| {
                    (g.neighbors(v).intersection_len(tables.outer.representative(c)) as u32).min(d)
                })
                .collect();
            for i in 0..q {
                let mut t = vec![cls_empty; q];
                t[i] = cls_v;
                let ti = intern(t, &mut entries);
                let value = if i == 0 { 1 } else { 0 };
                for id in 0..outer_total {
                    outer_digits(id, radix, q, &mut digit_buf);
                    let ok = (0..q)
                        .all(|j| matrix[i][j].contains_capped(capped[digit_buf[j] as usize], d));
                    if ok && better(value, entries[ti][id].value) {
                        entries[ti][id] = Entry { value, back: Back::Leaf(i as u8) };
                    }
                }
            }
            None
        } else {
            let kids = rooted.children(w);
            if kids.len() != 2 {
                return Err(internal("internal node without two children"));
            }
            let (a, b) = (kids[0], kids[1]);
            let sa = states[a].take().ok_or_else(|| internal("child state missing"))?;
            let sb = states[b].take().ok_or_else(|| internal("child state missing"))?;
            let ca = sa.tables.inner.class_count();
            let cb = sb.tables.inner.class_count();

            // Inner combine: class at w of a union of child representatives.
            let mut combine = vec![vec![0u32; cb]; ca];
            for (ia, row) in combine.iter_mut().enumerate() {
                let ra = sa.tables.inner.representative(ia);
                for (ib, slot) in row.iter_mut().enumerate() {
                    let u = ra.union(sb.tables.inner.representative(ib));
                    *slot = tables
                        .inner
                        .class_of(g, &u)
                        .ok_or_else(|| internal("combined set not in class table"))?
                        as u32;
                }
            }
            // Down maps: what a child's outer side looks like, given the
            // sibling's content and the outside-of-w expectation.
            let down = |child: &NodeState, sibling: &NodeState| -> Result<Vec<Vec<u32>>, SolverError> {
                let sc = sibling.tables.inner.class_count();
                let mut map = vec![vec![0u32; radix]; sc];
                for (is, row) in map.iter_mut().enumerate() {
                    let rs = sibling.tables.inner.representative(is);
                    for (io, slot) in row.iter_mut().enumerate() {
                        let u = rs.union(tables.outer.representative(io));
                        *slot = child
                            .tables
                            .outer
                            .class_of(g, &u)
                            .ok_or_else(|| internal("down-mapped set not in class table"))?
                            as u32;
                    }
                }
                Ok(map)
            };
            let down_a = down(&sa, &sb)?;
            let down_b = down(&sb, &sa)?;

            let (ra, rb) = (sa.tables.outer.class_count(), sb.tables.outer.class_count());
            let est = sa
                .tuples
                .len()
                .saturating_mul(sb.tuples.len())
                .saturating_mul(outer_total);
            if est > opts.entry_limit.saturating_mul(64) {
                return Err(SolverError::TablesTooLarge { limit: opts.entry_limit, what: "join combinations" });
            }

            let mut oa_digits = Vec::with_capacity(q);
            let mut ob_digits = Vec::with_capacity(q);
            for (ia, ta) in sa.tuples.iter().enumerate() {
                for (ib, tb) in sb.tuples.iter().enumerate() {
                    let tw: Vec<u32> =
                        (0..q).map(|j| combine[ta[j] as usize][tb[j] as usize]).collect();
                    let ti = intern(tw, &mut entries);
                    if entries.len().saturating_mul(outer_total) > opts.entry_limit {
                        return Err(SolverError::TablesTooLarge {
                            limit: opts.entry_limit,
                            what: "table entries",
                        });
                    }
                    for id in 0..outer_total {
                        outer_digits(id, radix, q, &mut digit_buf);
                        oa_digits.clear();
                        ob_digits.clear();
                        for j in 0..q {
                            oa_digits.push(down_a[tb[j] as usize][digit_buf[j] as usize]);
                            ob_digits.push(down_b[ta[j] as usize][digit_buf[j] as usize]);
                        }
                        let oa_id = oa_digits.iter().rev().fold(0usize, |acc, &x| acc * ra + x as usize);
                        let ob_id = ob_digits.iter().rev().fold(0usize, |acc, &x| acc * rb + x as usize);
                        let va = sa.entries[ia][oa_id].value;
                        let vb = sb.entries[ib][ob_id].value;
                        if va != UNSET && vb != UNSET {
                            let cand = va + vb;
                            if better(cand, entries[ti][id].value) {
                                entries[ti][id] = Entry {
                                    value: cand,
                                    back: Back::Join(ia as u32, ib as u32),
                                };
                            }
                        }
                    }
                }
            }
            states[a] = Some(sa);
            states[b] = Some(sb);
            Some(JoinMaps { a, b, down_a, down_b })
        };

        states[w] = Some(NodeState { tables, tuples, entries, join });
    }

    // The root's outer side is empty: exactly one outer combination.
    let root = rooted.root();
    let root_state = states[root].as_ref().ok_or_else(|| internal("missing root state"))?;
    if root_state.tables.outer.class_count() != 1 {
        return Err(internal("root outer side has more than one class"));
    }
    let mut best: Option<(u32, usize)> = None;
    for (ti, row) in root_state.entries.iter().enumerate() {
        let v = row[0].value;
        if v != UNSET && better(v, best.map_or(UNSET, |(b, _)| b)) {
            best = Some((v, ti));
        }
    }
    let Some((value, root_tuple)) = best else {
        return Ok(SolveOutcome::Infeasible);
    };

    // Walk back pointers to a concrete partition.
    let mut assignment = vec![usize::MAX; g.n()];
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, root_tuple, 0)];
    while let Some((w, ti, oid)) = stack.pop() {
        let state = states[w].as_ref().ok_or_else(|| internal("missing state"))?;
        let entry = state.entries[ti][oid];
        if entry.value == UNSET {
            return Err(internal("reconstruction reached a bottom entry"));
        }
        match entry.back {
            Back::None => return Err(internal("feasible entry without a back pointer")),
            Back::Leaf(part) => {
                let v = rooted
                    .vertex_of_node(w)
                    .ok_or_else(|| internal("leaf back pointer at internal node"))?;
                assignment[v] = part as usize;
            }
            Back::Join(ia, ib) => {
                let join = state.join.as_ref().ok_or_else(|| internal("join back pointer at leaf"))?;
                let (sa, sb) = (
                    states[join.a].as_ref().ok_or_else(|| internal("missing state"))?,
                    states[join.b].as_ref().ok_or_else(|| internal("missing state"))?,
                );
                let radix = state.tables.outer.class_count();
                outer_digits(oid, radix, q, &mut digit_buf);
                let ta = &sa.tuples[ia as usize];
                let tb = &sb.tuples[ib as usize];
                let (ra, rb) = (sa.tables.outer.class_count(), sb.tables.outer.class_count());
                let oa_id = (0..q)
                    .rev()
                    .fold(0usize, |acc, j| acc * ra + join.down_a[tb[j] as usize][digit_buf[j] as usize] as usize);
                let ob_id = (0..q)
                    .rev()
                    .fold(0usize, |acc, j| acc * rb + join.down_b[ta[j] as usize][digit_buf[j] as usize] as usize);
                stack.push((join.a, ia as usize, oa_id));
                stack.push((join.b, ib as usize, ob_id));
            }
        }
    }
    if assignment.contains(&usize::MAX) {
        return Err(internal("reconstruction left vertices unassigned"));
    }
    match verify_solution(g, spec, &assignment) {
        Ok(true) => {}
        Ok(false) => return Err(internal("witness fails the literal constraints")),
        Err(e) => return Err(internal(&format!("witness malformed: {e}"))),
    }
    let claimed = assignment.iter().filter(|&&p| p == 0).count();
    if claimed != value as usize {
        return Err(internal("witness value disagrees with the table"));
    }
    Ok(SolveOutcome::Optimal { value: value as usize, assignment })
}

/// Convenience for (sigma, rho) problems: the chosen set is part 0 of the
/// partition.
pub fn selected_set(outcome: &SolveOutcome) -> Option<Vec<usize>> {
    match outcome {
        SolveOutcome::Optimal { assignment, .. } => Some(
            assignment
                .iter()
                .enumerate()
                .filter(|(_, &p)| p == 0)
                .map(|(v, _)| v)
                .collect(),
        ),
        SolveOutcome::Infeasible => None,
    }
}

/// Ensures an IntSet matrix problem's sets all decide membership at the
/// solver's cap; always true for specs built in this crate, worth checking
/// for hand-rolled matrices.
pub fn check_cap_compatible(spec: &ProblemSpec) -> bool {
    let d = spec.depth().max(1);
    spec.matrix_view()
        .iter()
        .flatten()
        .all(|s: &IntSet| s.depth_contribution().unwrap_or(0) <= d)
}
