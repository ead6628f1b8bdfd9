//! Locally checkable vertex problem statements.
//!
//! A problem constrains, for every vertex, how many of its neighbours lie
//! in each part of a vertex partition. Two forms:
//!
//! - (sigma, rho): select a set S; selected vertices need `|N(v) ∩ S| ∈ sigma`,
//!   unselected ones `|N(v) ∩ S| ∈ rho`. Independent set is `({0}, N)`,
//!   dominating set `(N, N∖{0})`, and so on.
//! - a q x q matrix D of integer sets: partition V into q parts, and a
//!   vertex in part i needs `|N(v) ∩ part j| ∈ D[i][j]` for every j. Graph
//!   homomorphism style problems (colourings, coverings) live here.
//!
//! The cells are [`IntSet`]s: finite sets of naturals or complements of
//! finite sets. The largest integer mentioned by any cell determines the
//! problem's counting depth `d`: neighbour counts only ever need to be
//! known up to d, which is what lets the solver work with capped counts.

use crate::graph::Graph;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("bad integer set {text:?}: {msg}")]
    BadIntSet { text: String, msg: String },
    #[error("unknown problem {name:?}; known: {known}")]
    UnknownProblem { name: String, known: String },
    #[error("constraint matrix must be square and non-empty")]
    BadMatrix,
    #[error("assignment names part {part} but the problem has {q} parts")]
    PartOutOfRange { part: usize, q: usize },
    #[error("assignment covers {got} vertices, graph has {want}")]
    WrongAssignmentLength { got: usize, want: usize },
}

/// A set of natural numbers that is either finite or has finite complement.
/// Every degree constraint in this crate is one of these.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntSet {
    Finite(Vec<u32>),
    Cofinite(Vec<u32>),
}

impl IntSet {
    pub fn finite<I: IntoIterator<Item = u32>>(values: I) -> Self {
        let mut v: Vec<u32> = values.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IntSet::Finite(v)
    }

    pub fn cofinite<I: IntoIterator<Item = u32>>(excluded: I) -> Self {
        let mut v: Vec<u32> = excluded.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IntSet::Cofinite(v)
    }

    pub fn all() -> Self {
        IntSet::Cofinite(Vec::new())
    }

    pub fn empty() -> Self {
        IntSet::Finite(Vec::new())
    }

    pub fn contains(&self, x: u32) -> bool {
        match self {
            IntSet::Finite(v) => v.binary_search(&x).is_ok(),
            IntSet::Cofinite(v) => v.binary_search(&x).is_err(),
        }
    }

    pub fn is_cofinite(&self) -> bool {
        matches!(self, IntSet::Cofinite(_))
    }

    /// `1 + max listed value` (listed members for finite sets, listed
    /// exclusions for cofinite ones); `None` for the empty set and for N,
    /// which constrain nothing count-wise.
    pub fn depth_contribution(&self) -> Option<u32> {
        let listed = match self {
            IntSet::Finite(v) | IntSet::Cofinite(v) => v,
        };
        listed.last().map(|&m| m + 1)
    }

    /// Membership of a count known only up to the cap d: exact below the
    /// cap; at the cap the true count is some value >= d, and provided
    /// `d >= depth_contribution()` the set is constant from d on, cofinite
    /// sets containing everything there and finite ones nothing.
    pub fn contains_capped(&self, capped_count: u32, d: u32) -> bool {
        debug_assert!(capped_count <= d);
        debug_assert!(self.depth_contribution().unwrap_or(0) <= d);
        if capped_count < d {
            self.contains(capped_count)
        } else {
            self.is_cofinite()
        }
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, v: &[u32]| {
            write!(f, "{{")?;
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")
        };
        match self {
            IntSet::Finite(v) => list(f, v),
            IntSet::Cofinite(v) if v.is_empty() => write!(f, "N"),
            IntSet::Cofinite(v) => {
                write!(f, "N\\")?;
                list(f, v)
            }
        }
    }
}

/// Parses `{0,2}`, `{}`, `N`, and `N\{0,1}` (whitespace tolerated).
pub fn parse_int_set(text: &str) -> Result<IntSet, ProblemError> {
    let err = |msg: &str| ProblemError::BadIntSet { text: text.to_string(), msg: msg.to_string() };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (cofinite, body) = if let Some(rest) = s.strip_prefix("N\\") {
        (true, rest)
    } else if s == "N" {
        return Ok(IntSet::all());
    } else {
        (false, s.as_str())
    };
    let inner = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| err("expected {..} braces"))?;
    let mut values = Vec::new();
    if !inner.is_empty() {
        for token in inner.split(',') {
            let v: u32 = token
                .parse()
                .map_err(|_| err(&format!("bad number {token:?}")))?;
            values.push(v);
        }
    }
    Ok(if cofinite { IntSet::cofinite(values) } else { IntSet::finite(values) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Minimize,
    Maximize,
    Feasibility,
}

impl Objective {
    pub fn label(self) -> &'static str {
        match self {
            Objective::Minimize => "min",
            Objective::Maximize => "max",
            Objective::Feasibility => "feasible",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Constraint {
    SigmaRho { sigma: IntSet, rho: IntSet },
    Matrix(Vec<Vec<IntSet>>),
}

/// A full problem statement: the local constraint plus what to optimize.
/// The objective always speaks about part 0 (the selected set S for
/// (sigma, rho) problems).
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub constraint: Constraint,
    pub objective: Objective,
}

impl ProblemSpec {
    pub fn sigma_rho(name: &str, sigma: IntSet, rho: IntSet, objective: Objective) -> Self {
        ProblemSpec {
            name: name.to_string(),
            constraint: Constraint::SigmaRho { sigma, rho },
            objective,
        }
    }

    pub fn matrix(name: &str, d: Vec<Vec<IntSet>>, objective: Objective) -> Result<Self, ProblemError> {
        let q = d.len();
        if q == 0 || d.iter().any(|row| row.len() != q) {
            return Err(ProblemError::BadMatrix);
        }
        Ok(ProblemSpec { name: name.to_string(), constraint: Constraint::Matrix(d), objective })
    }

    /// Number of parts in the partition.
    pub fn parts(&self) -> usize {
        match &self.constraint {
            Constraint::SigmaRho { .. } => 2,
            Constraint::Matrix(d) => d.len(),
        }
    }

    /// Counting depth d: how far neighbour counts must be distinguished.
    /// Zero when no cell constrains counts (every cell empty or N).
    pub fn depth(&self) -> u32 {
        self.matrix_view()
            .iter()
            .flatten()
            .filter_map(IntSet::depth_contribution)
            .max()
            .unwrap_or(0)
    }

    /// The constraint as a q x q matrix. A (sigma, rho) problem is the
    /// 2-part matrix [[sigma, N], [rho, N]]: counts toward part 1 are free.
    pub fn matrix_view(&self) -> Vec<Vec<IntSet>> {
        match &self.constraint {
            Constraint::SigmaRho { sigma, rho } => vec![
                vec![sigma.clone(), IntSet::all()],
                vec![rho.clone(), IntSet::all()],
            ],
            Constraint::Matrix(d) => d.clone(),
        }
    }
}

/// Checks an assignment against the literal, uncapped constraints. The
/// assignment maps each vertex to its part. No solver machinery involved:
/// this is plain counting.
pub fn verify_solution(g: &Graph, spec: &ProblemSpec, assignment: &[usize]) -> Result<bool, ProblemError> {
    if assignment.len() != g.n() {
        return Err(ProblemError::WrongAssignmentLength { got: assignment.len(), want: g.n() });
    }
    let q = spec.parts();
    if let Some(&part) = assignment.iter().find(|&&p| p >= q) {
        return Err(ProblemError::PartOutOfRange { part, q });
    }
    let matrix = spec.matrix_view();
    for v in 0..g.n() {
        let mut counts = vec![0u32; q];
        for w in g.neighbors(v).iter() {
            counts[assignment[w]] += 1;
        }
        for j in 0..q {
            if !matrix[assignment[v]][j].contains(counts[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// How a template graph H turns into a degree constraint matrix: which
/// local map from a vertex's neighbourhood onto H's neighbourhoods is
/// demanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HVariant {
    /// Homomorphism to H: edges may only land on H-edges.
    Coloring,
    /// Locally surjective: every H-neighbour class is hit at least once.
    RoleAssignment,
    /// Locally bijective: every H-neighbour class is hit exactly once.
    Covering,
    /// Locally injective: every H-neighbour class is hit at most once.
    PartialCovering,
}

impl HVariant {
    pub fn label(self) -> &'static str {
        match self {
            HVariant::Coloring => "coloring",
            HVariant::RoleAssignment => "role-assignment",
            HVariant::Covering => "covering",
            HVariant::PartialCovering => "partial-covering",
        }
    }
}

/// The q x q matrix of the H-templated problem, q = |V(H)|: cell (i, j) is
/// the constraint on neighbours in part j for a vertex in part i, and
/// non-edges of H always force 0.
pub fn h_variant_spec(h: &Graph, variant: HVariant) -> Result<ProblemSpec, ProblemError> {
    if h.n() == 0 {
        return Err(ProblemError::BadMatrix);
    }
    let on_edge = match variant {
        HVariant::Coloring => IntSet::all(),
        HVariant::RoleAssignment => IntSet::cofinite([0]),
        HVariant::Covering => IntSet::finite([1]),
        HVariant::PartialCovering => IntSet::finite([0, 1]),
    };
    let matrix = (0..h.n())
        .map(|i| {
            (0..h.n())
                .map(|j| if h.has_edge(i, j) { on_edge.clone() } else { IntSet::finite([0]) })
                .collect()
        })
        .collect();
    ProblemSpec::matrix(&format!("{}-to-h", variant.label()), matrix, Objective::Feasibility)
}

const FIXED_CATALOG: &[(&str, &str, &str, Objective)] = &[
    ("independent-set", "{0}", "N", Objective::Maximize),
    ("dominating-set", "N", "N\\{0}", Objective::Minimize),
    ("independent-dominating-set", "{0}", "N\\{0}", Objective::Minimize),
    ("total-dominating-set", "N\\{0}", "N\\{0}", Objective::Minimize),
    ("perfect-code", "{0}", "{1}", Objective::Minimize),
    ("strong-stable-set", "{0}", "{0,1}", Objective::Maximize),
    ("induced-matching", "{1}", "N", Objective::Maximize),
    ("perfect-dominating-set", "N", "{1}", Objective::Minimize),
    ("total-perfect-dominating-set", "{1}", "{1}", Objective::Minimize),
];

/// Names accepted by [`catalog_lookup`]; the `d` forms take a numeral, as
/// in `2-dominating-set` or `max-degree-3`.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = FIXED_CATALOG.iter().map(|(n, ..)| n.to_string()).collect();
    names.extend(
        ["<d>-dominating-set", "min-degree-<d>", "max-degree-<d>", "induced-<d>-regular"]
            .map(String::from),
    );
    names
}

/// Looks a problem up by catalog name.
pub fn catalog_lookup(name: &str) -> Result<ProblemSpec, ProblemError> {
    let unknown = || ProblemError::UnknownProblem {
        name: name.to_string(),
        known: catalog_names().join(", "),
    };
    for (n, sigma, rho, objective) in FIXED_CATALOG {
        if *n == name {
            let sigma = parse_int_set(sigma).expect("catalog literals parse");
            let rho = parse_int_set(rho).expect("catalog literals parse");
            return Ok(ProblemSpec::sigma_rho(name, sigma, rho, *objective));
        }
    }
    if let Some(prefix) = name.strip_suffix("-dominating-set") {
        // d-dominating-set: everyone outside sees at least d of S.
        if let Ok(d) = prefix.parse::<u32>() {
            if d >= 1 {
                return Ok(ProblemSpec::sigma_rho(
                    name,
                    IntSet::all(),
                    IntSet::cofinite(0..d),
                    Objective::Minimize,
                ));
            }
        }
        return Err(unknown());
    }
    if let Some(d) = name.strip_prefix("min-degree-").and_then(|s| s.parse::<u32>().ok()) {
        if d >= 1 {
            // Largest induced subgraph of minimum degree >= d.
            return Ok(ProblemSpec::sigma_rho(
                name,
                IntSet::cofinite(0..d),
                IntSet::all(),
                Objective::Maximize,
            ));
        }
        return Err(unknown());
    }
    if let Some(d) = name.strip_prefix("max-degree-").and_then(|s| s.parse::<u32>().ok()) {
        // Largest induced subgraph of maximum degree <= d.
        return Ok(ProblemSpec::sigma_rho(
            name,
            IntSet::finite(0..=d),
            IntSet::all(),
            Objective::Maximize,
        ));
    }
    if let Some(rest) = name.strip_prefix("induced-") {
        if let Some(ds) = rest.strip_suffix("-regular") {
            if let Ok(d) = ds.parse::<u32>() {
                // Largest induced d-regular subgraph.
                return Ok(ProblemSpec::sigma_rho(
                    name,
                    IntSet::finite([d]),
                    IntSet::all(),
                    Objective::Maximize,
                ));
            }
        }
    }
    Err(unknown())
}
