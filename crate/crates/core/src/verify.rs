//! Self-check suite: the crate's headline claims, each validated end to end
//! on seeded instances against brute force or known values.
//!
//! `qrw verify` runs everything here and fails loudly on any mismatch; the
//! acceptance test target runs the same checks one per test. Seeds are
//! fixed constants so failures reproduce exactly.

use crate::cutrank::{
    bipartite_adjacency, cut_rank, distinct_line_bound, rank_gf2, rank_q, CutField, QCutRank,
    ZeroOneMatrix,
};
use crate::decomp::BranchDecomposition;
use crate::family;
use crate::graph::{Graph, VertexSet};
use crate::nec::{self, signature, ClassTable};
use crate::oracle;
use crate::problems::{catalog_lookup, h_variant_spec, HVariant, Objective, ProblemSpec};
use crate::rng::Xorshift64Star;
use crate::search::{exact_decomposition, greedy_decomposition};
use crate::solver::{solve, SolveOutcome};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(id: usize, name: &'static str, pass: bool, detail: String) -> Self {
        CheckResult { id, name, pass, detail }
    }
}

/// Seeded connected graphs: a uniform-attachment tree plus extra edges.
/// One generator stream per graph keeps entries independent of each other.
pub fn random_connected_graph(n: usize, extra_edge_p: f64, seed: u64) -> Graph {
    let mut rng = Xorshift64Star::new(seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(rng.next_below(v as u64) as usize, v);
    }
    for u in 0..n {
        for w in u + 1..n {
            if !g.has_edge(u, w) && rng.next_bool(extra_edge_p) {
                g.add_edge(u, w);
            }
        }
    }
    g
}

const CORPUS_SEED: u64 = 0x5EED_C0DE;

/// The fixed 500-graph corpus the solver checks run on: connected, sizes
/// cycling 1..=7.
pub fn solver_corpus() -> Vec<Graph> {
    let mut rng = Xorshift64Star::new(CORPUS_SEED);
    (0..500)
        .map(|i| random_connected_graph(1 + i % 7, 0.3, rng.next_u64()))
        .collect()
}

fn outcome_value(outcome: &SolveOutcome) -> Option<usize> {
    match outcome {
        SolveOutcome::Optimal { value, .. } => Some(*value),
        SolveOutcome::Infeasible => None,
    }
}

/// 1: the worked 5x4 matrix has full rank 4 over Q and GF(2).
pub fn check_printed_matrix_rank() -> CheckResult {
    let m = ZeroOneMatrix::from_rows(&[
        vec![1, 1, 0, 0],
        vec![0, 1, 1, 0],
        vec![0, 0, 1, 1],
        vec![0, 1, 1, 0],
        vec![0, 0, 0, 1],
    ]);
    let (q, g2, b) = (rank_q(&m), rank_gf2(&m), distinct_line_bound(&m));
    let pass = q == 4 && g2 == 4 && b == 4;
    CheckResult::new(
        1,
        "printed 5x4 matrix has rank 4",
        pass,
        format!("rank_q={q} rank_gf2={g2} distinct_bound={b}"),
    )
}

/// 2: on the 500-graph corpus, the DP solver agrees with assignment
/// enumeration for every catalog problem under both objectives and for the
/// four H-template variants over K2, K3, P3.
pub fn check_solver_matches_brute_force() -> CheckResult {
    let corpus = solver_corpus();
    let mut sigma_rho_specs: Vec<ProblemSpec> = [
        "independent-set",
        "dominating-set",
        "independent-dominating-set",
        "total-dominating-set",
        "perfect-code",
        "strong-stable-set",
        "induced-matching",
        "perfect-dominating-set",
        "total-perfect-dominating-set",
        "2-dominating-set",
        "min-degree-2",
        "max-degree-2",
        "induced-2-regular",
    ]
    .iter()
    .flat_map(|name| {
        let base = catalog_lookup(name).expect("catalog name");
        [Objective::Minimize, Objective::Maximize].map(|objective| {
            let mut spec = base.clone();
            spec.objective = objective;
            spec
        })
    })
    .collect();
    let templates = [family::complete(2), family::complete(3), family::path(3).unwrap()];
    for h in &templates {
        for variant in [
            HVariant::Coloring,
            HVariant::RoleAssignment,
            HVariant::Covering,
            HVariant::PartialCovering,
        ] {
            sigma_rho_specs.push(h_variant_spec(h, variant).expect("template spec"));
        }
    }

    let mut runs = 0usize;
    let mut mismatches = Vec::new();
    for (gi, g) in corpus.iter().enumerate() {
        let decomp = if g.n() <= 1 {
            BranchDecomposition::trivial()
        } else {
            exact_decomposition(g, &QCutRank, 13).expect("corpus fits").decomposition
        };
        let rooted = decomp.root_default();
        for spec in &sigma_rho_specs {
            let fast = outcome_value(&solve(g, &rooted, spec).expect("fits guards"));
            let slow = outcome_value(&oracle::brute_solve(g, spec).expect("fits limits"));
            runs += 1;
            if fast != slow {
                mismatches.push(format!(
                    "graph {gi} ({:?}) problem {} {}: solver {fast:?} brute {slow:?}",
                    g,
                    spec.name,
                    spec.objective.label()
                ));
            }
        }
    }
    let pass = mismatches.is_empty();
    CheckResult::new(
        2,
        "solver equals brute force on the corpus",
        pass,
        if pass {
            format!("{} graphs x {} problems = {runs} runs, all equal", corpus.len(), sigma_rho_specs.len())
        } else {
            format!("{} mismatches, first: {}", mismatches.len(), mismatches[0])
        },
    )
}

/// 3: class counts never exceed (d k + 1)^k on 1000+ sampled triples up to
/// n = 16.
pub fn check_class_count_bound() -> CheckResult {
    let mut rng = Xorshift64Star::new(0xB0A7);
    let mut checked = 0usize;
    let mut worst: Option<String> = None;
    for i in 0..1000 {
        let n = 2 + i % 15;
        let g = family::gnp(n, 0.4, rng.next_u64()).unwrap();
        let side_len = 1 + (rng.next_below(8) as usize).min(n - 1);
        let mut members: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut members);
        let side = VertexSet::from_vertices(n, members[..side_len].iter().copied());
        let d = 1 + (i % 3) as u32;
        let count = nec::nec_count(&g, &side, d) as u128;
        let bound = nec::class_count_bound(&g, &side, d);
        checked += 1;
        if count > bound {
            worst = Some(format!("n={n} d={d} side={side}: {count} > {bound}"));
            break;
        }
    }
    CheckResult::new(
        3,
        "class count bound (dk+1)^k holds",
        worst.is_none(),
        worst.unwrap_or_else(|| format!("{checked} sampled triples within bound")),
    )
}

/// 4: representative reduction keeps the class and shrinks to at most d k
/// vertices, 1000+ trials.
pub fn check_representative_reduction() -> CheckResult {
    let mut rng = Xorshift64Star::new(0x4ED0);
    let mut checked = 0usize;
    let mut failure: Option<String> = None;
    'outer: for i in 0..1000 {
        let n = 2 + i % 15;
        let g = family::gnp(n, 0.4, rng.next_u64()).unwrap();
        let side = VertexSet::from_vertices(n, (0..n).filter(|_| rng.next_bool(0.5)));
        let x = VertexSet::from_vertices(n, side.iter().filter(|_| rng.next_bool(0.6)));
        let k = cut_rank(&g, &side, CutField::Q);
        for d in 1..=3u32 {
            let r = nec::reduce_representative(&g, &side, &x, d);
            checked += 1;
            let ok = r.is_subset(&x)
                && signature(&g, &side, &r, d) == signature(&g, &side, &x, d)
                && r.len() <= d as usize * k;
            if !ok {
                failure = Some(format!("n={n} d={d} side={side} x={x}: reduced to {r}, k={k}"));
                break 'outer;
            }
        }
    }
    CheckResult::new(
        4,
        "reduced representatives stay equivalent and small",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{checked} reductions verified")),
    )
}

/// 5: rank_gf2 <= rank_q <= distinct-line bound on every corpus
/// decomposition cut and 1000 random sides up to n = 16.
pub fn check_rank_chain() -> CheckResult {
    let mut checked = 0usize;
    let mut failure: Option<String> = None;
    let mut test_side = |g: &Graph, side: &VertexSet| {
        let m = bipartite_adjacency(g, side);
        let (lo, mid, hi) = (rank_gf2(&m), rank_q(&m), distinct_line_bound(&m));
        checked += 1;
        if !(lo <= mid && mid <= hi) {
            failure.get_or_insert_with(|| {
                format!("side {side} of {g:?}: gf2={lo} q={mid} distinct={hi}")
            });
        }
    };
    for g in solver_corpus() {
        if g.n() < 2 {
            continue;
        }
        let d = exact_decomposition(&g, &QCutRank, 13).expect("corpus fits").decomposition;
        for cut in d.enumerate_cuts() {
            test_side(&g, &cut.side);
        }
    }
    let mut rng = Xorshift64Star::new(0xC4A1);
    for i in 0..1000 {
        let n = 2 + i % 15;
        let g = family::gnp(n, 0.45, rng.next_u64()).unwrap();
        let side = VertexSet::from_vertices(n, (0..n).filter(|_| rng.next_bool(0.5)));
        test_side(&g, &side);
    }
    CheckResult::new(
        5,
        "rank chain gf2 <= q <= distinct lines",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{checked} cuts within the chain")),
    )
}

/// 6: trees have width 1; paths, cycles and the 3x3 grid stay within
/// treewidth + 1.
pub fn check_family_widths() -> CheckResult {
    let mut failure: Option<String> = None;
    let mut checked = 0usize;
    let mut expect = |g: &Graph, what: &str, max: usize, exact: Option<usize>| {
        let w = exact_decomposition(g, &QCutRank, 13).expect("small").width;
        checked += 1;
        let ok = w <= max && exact.is_none_or(|e| w == e);
        if !ok {
            failure.get_or_insert_with(|| format!("{what}: width {w}, want <= {max} {exact:?}"));
        }
    };
    let mut rng = Xorshift64Star::new(0x7EE5);
    for n in 2..=10 {
        for _ in 0..3 {
            let g = family::random_tree(n, rng.next_u64()).unwrap();
            expect(&g, "random tree", 1, Some(1));
        }
    }
    for n in 2..=8 {
        expect(&family::path(n).unwrap(), "path", 2, None);
    }
    for n in 3..=8 {
        expect(&family::cycle(n).unwrap(), "cycle", 3, None);
    }
    expect(&family::grid(3, 3).unwrap(), "3x3 grid", 4, Some(2));
    CheckResult::new(
        6,
        "known family widths",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{checked} instances as expected")),
    )
}

/// 7: catalog counting depths match the published table of values.
pub fn check_catalog_depths() -> CheckResult {
    let expected: &[(&str, u32)] = &[
        ("independent-set", 1),
        ("dominating-set", 1),
        ("independent-dominating-set", 1),
        ("total-dominating-set", 1),
        ("perfect-code", 2),
        ("strong-stable-set", 2),
        ("induced-matching", 2),
        ("perfect-dominating-set", 2),
        ("total-perfect-dominating-set", 2),
        ("3-dominating-set", 3),
        ("min-degree-3", 3),
        ("max-degree-3", 4),
        ("induced-3-regular", 4),
    ];
    let mut failures = Vec::new();
    for &(name, want) in expected {
        let got = catalog_lookup(name).expect("catalog name").depth();
        if got != want {
            failures.push(format!("{name}: depth {got}, want {want}"));
        }
    }
    let k3 = family::complete(3);
    for (variant, want) in [
        (HVariant::Coloring, 1),
        (HVariant::RoleAssignment, 1),
        (HVariant::Covering, 2),
        (HVariant::PartialCovering, 2),
    ] {
        let got = h_variant_spec(&k3, variant).expect("template").depth();
        if got != want {
            failures.push(format!("{}: depth {got}, want {want}", variant.label()));
        }
    }
    let pass = failures.is_empty();
    CheckResult::new(
        7,
        "catalog counting depths",
        pass,
        if pass { "17 problem depths as published".into() } else { failures.join("; ") },
    )
}

/// 8: the solved value never depends on which valid decomposition carried
/// the DP: exact, two greedy seeds, caterpillar.
pub fn check_decomposition_independence() -> CheckResult {
    let mut rng = Xorshift64Star::new(0xDEC0);
    let problems = [
        catalog_lookup("dominating-set").unwrap(),
        catalog_lookup("independent-set").unwrap(),
        catalog_lookup("perfect-code").unwrap(),
    ];
    let mut failure: Option<String> = None;
    let mut checked = 0usize;
    'outer: for i in 0..50 {
        let n = 2 + i % 7;
        let g = random_connected_graph(n, 0.35, rng.next_u64());
        let decomps = [
            exact_decomposition(&g, &QCutRank, 13).expect("small").decomposition,
            greedy_decomposition(&g, &QCutRank, 0).expect("small").decomposition,
            greedy_decomposition(&g, &QCutRank, 1).expect("small").decomposition,
            BranchDecomposition::caterpillar(n).expect("n >= 1"),
        ];
        for spec in &problems {
            let values: Vec<Option<usize>> = decomps
                .iter()
                .map(|d| outcome_value(&solve(&g, &d.root_default(), spec).expect("fits")))
                .collect();
            checked += 1;
            if values.windows(2).any(|w| w[0] != w[1]) {
                failure = Some(format!("graph {i} {:?} problem {}: values {values:?}", g, spec.name));
                break 'outer;
            }
        }
    }
    CheckResult::new(
        8,
        "solved value independent of the decomposition",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{checked} four-way comparisons equal")),
    )
}

/// 9: breadth-first class enumeration finds exactly the classes that
/// exhaustive subset enumeration finds, sides up to 10 vertices.
pub fn check_class_enumeration() -> CheckResult {
    let mut failure: Option<String> = None;
    let mut checked = 0usize;
    // Exhaustive at tiny sizes: every side of every seeded graph.
    let mut rng = Xorshift64Star::new(0x9EC5);
    'small: for n in 2..=5usize {
        for _ in 0..10 {
            let g = family::gnp(n, 0.5, rng.next_u64()).unwrap();
            for mask in 0u32..1 << n {
                let side = VertexSet::from_vertices(n, (0..n).filter(|v| mask >> v & 1 == 1));
                for d in 1..=2 {
                    let fast = ClassTable::build(&g, &side, d).class_count();
                    let slow = oracle::brute_nec_classes(&g, &side, d).expect("small");
                    checked += 1;
                    if fast != slow {
                        failure = Some(format!("{g:?} side {side} d {d}: bfs {fast} brute {slow}"));
                        break 'small;
                    }
                }
            }
        }
    }
    // Seeded sides up to 10 vertices on larger graphs.
    if failure.is_none() {
        'big: for i in 0..300 {
            let n = 6 + i % 7;
            let g = family::gnp(n, 0.4, rng.next_u64()).unwrap();
            let mut members: Vec<usize> = (0..n).collect();
            rng.shuffle(&mut members);
            let side_len = 1 + rng.next_below(10.min(n as u64)) as usize;
            let side = VertexSet::from_vertices(n, members[..side_len].iter().copied());
            let d = 1 + (i % 3) as u32;
            let fast = ClassTable::build(&g, &side, d).class_count();
            let slow = oracle::brute_nec_classes(&g, &side, d).expect("side <= 10");
            checked += 1;
            if fast != slow {
                failure = Some(format!("{g:?} side {side} d {d}: bfs {fast} brute {slow}"));
                break 'big;
            }
        }
    }
    CheckResult::new(
        9,
        "class enumeration matches brute force",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{checked} side/depth pairs equal")),
    )
}

/// 10: capping arithmetic is exact (exhaustively for d <= 4) and disjoint
/// signatures add.
pub fn check_capped_counting() -> CheckResult {
    let mut failure: Option<String> = None;
    for d in 1u32..=4 {
        for a in 0..=12 {
            for b in 0..=12 {
                if (a + b).min(d) != (a.min(d) + b.min(d)).min(d) {
                    failure = Some(format!("d={d} a={a} b={b}"));
                }
            }
        }
    }
    let mut rng = Xorshift64Star::new(0xCA99);
    let mut checked = 0usize;
    if failure.is_none() {
        'outer: for _ in 0..200 {
            let n = 4 + rng.next_below(8) as usize;
            let g = family::gnp(n, 0.5, rng.next_u64()).unwrap();
            let side = VertexSet::from_vertices(n, (0..n).filter(|_| rng.next_bool(0.6)));
            let x = VertexSet::from_vertices(n, side.iter().filter(|_| rng.next_bool(0.5)));
            let y = VertexSet::from_vertices(
                n,
                side.difference(&x).iter().filter(|_| rng.next_bool(0.5)),
            );
            for d in 1..=4u32 {
                let lhs = signature(&g, &side, &x.union(&y), d);
                let rhs: Vec<u32> = signature(&g, &side, &x, d)
                    .iter()
                    .zip(signature(&g, &side, &y, d))
                    .map(|(&a, b)| (a + b).min(d))
                    .collect();
                checked += 1;
                if lhs != rhs {
                    failure = Some(format!("{g:?} side {side} x {x} y {y} d {d}"));
                    break 'outer;
                }
            }
        }
    }
    CheckResult::new(
        10,
        "capped counts form a sound arithmetic",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("exhaustive small cases plus {checked} signature sums")),
    )
}

pub fn run_all() -> Vec<CheckResult> {
    vec![
        check_printed_matrix_rank(),
        check_solver_matches_brute_force(),
        check_class_count_bound(),
        check_representative_reduction(),
        check_rank_chain(),
        check_family_widths(),
        check_catalog_depths(),
        check_decomposition_independence(),
        check_class_enumeration(),
        check_capped_counting(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve_with_fresh_decomposition(g: &Graph, spec: &ProblemSpec) -> Option<usize> {
        let d = if g.n() <= 1 {
            BranchDecomposition::trivial()
        } else {
            exact_decomposition(g, &QCutRank, 13).expect("fits the cap").decomposition
        };
        outcome_value(&solve(g, &d.root_default(), spec).expect("fits the guards"))
    }

    #[test]
    fn corpus_is_deterministic_and_connected() {
        let a = solver_corpus();
        let b = solver_corpus();
        assert_eq!(a.len(), 500);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.edges(), y.edges());
            assert!(x.is_connected());
            assert!(x.n() >= 1 && x.n() <= 7);
        }
        // All sizes occur.
        for n in 1..=7 {
            assert!(a.iter().any(|g| g.n() == n));
        }
    }

    #[test]
    fn quick_checks_pass() {
        for result in [
            check_printed_matrix_rank(),
            check_catalog_depths(),
            check_capped_counting(),
        ] {
            assert!(result.pass, "{}: {}", result.name, result.detail);
        }
    }

    #[test]
    fn solve_helper_matches_brute_on_a_sample() {
        let g = random_connected_graph(6, 0.3, 42);
        let spec = catalog_lookup("dominating-set").unwrap();
        let fast = solve_with_fresh_decomposition(&g, &spec);
        let slow = outcome_value(&oracle::brute_solve(&g, &spec).unwrap());
        assert_eq!(fast, slow);
    }
}
