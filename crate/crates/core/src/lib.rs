//! Branch decompositions of graphs under exact cut-rank functions, and a
//! dynamic-programming solver for locally checkable vertex problems that
//! runs over them.
//!
//! The pieces, bottom to top:
//!
//! - [`graph`]: bitset vertex sets, simple graphs, edge-list and DIMACS
//!   parsing; [`family`] generates named and seeded random instances.
//! - [`cutrank`]: exact cut-rank of a bipartition over Q (fraction-free
//!   big-integer elimination) and over GF(2).
//! - [`decomp`]: branch decompositions (subcubic trees whose leaves are the
//!   vertices), their cuts, widths, rooting, and a text codec.
//! - [`search`]: exact minimum-width decompositions by subset dynamic
//!   programming, and a greedy bisection fallback for larger graphs.
//! - [`nec`]: d-neighbour equivalence classes of a cut side, the engine
//!   behind the solver's table indexing.
//! - [`problems`]: locally checkable problem statements, as (sigma, rho)
//!   degree-set pairs or full q-part degree constraint matrices, plus the
//!   named catalog.
//! - [`solver`]: the table dynamic program over a rooted decomposition.
//! - [`oracle`]: brute-force reference implementations used to validate
//!   everything at small scale.
//! - [`verify`]: the self-check suite wired to `qrw verify`.
//!
//! # Example
//!
//! ```
//! use qrw::{family, problems, search, solver, QCutRank};
//!
//! let g = family::cycle(6).unwrap();
//! let found = search::find_decomposition(&g, &QCutRank, 13, 0).unwrap();
//! assert_eq!(found.width, 2);
//!
//! let spec = problems::catalog_lookup("perfect-code").unwrap();
//! let outcome = solver::solve(&g, &found.decomposition.root_default(), &spec).unwrap();
//! assert!(matches!(outcome, solver::SolveOutcome::Optimal { value: 2, .. }));
//! ```

pub mod cutrank;
pub mod decomp;
pub mod family;
pub mod graph;
pub mod nec;
pub mod oracle;
pub mod problems;
pub mod rng;
pub mod search;
pub mod solver;
pub mod verify;

pub use cutrank::{cut_rank, CutField, CutFunction, Gf2CutRank, QCutRank};
pub use decomp::{BranchDecomposition, RootedDecomposition};
pub use graph::{Graph, GraphFormat, VertexSet};
pub use problems::{IntSet, Objective, ProblemSpec};
pub use search::{exact_decomposition, greedy_decomposition, SearchResult};
pub use solver::{solve, SolveOutcome};

