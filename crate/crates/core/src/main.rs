//! The `qrw` command line tool.
//!
//! Exit codes: 0 on success (an infeasible problem instance is still a
//! successful run), 2 for usage and input errors, 3 when `qrw verify`
//! finds a failing check.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use qrw::cutrank::{cut_function, cut_rank, CutField};
use qrw::decomp::{parse_decomposition, serialize_decomposition, BranchDecomposition, DecompError};
use qrw::family::{self, FamilyError};
use qrw::graph::{parse_graph, Graph, GraphFormat, GraphParseError};
use qrw::nec;
use qrw::problems::{
    catalog_lookup, catalog_names, h_variant_spec, parse_int_set, Constraint, HVariant, Objective,
    ProblemError, ProblemSpec,
};
use qrw::search::{
    exact_decomposition, find_decomposition, greedy_decomposition, SearchError, SearchResult,
    DEFAULT_EXACT_CAP,
};
use qrw::solver::{solve, SolveOutcome, SolverError};
use qrw::verify;

#[derive(Parser)]
#[command(name = "qrw", version, about = "Branch decompositions under exact cut rank, and a solver for locally checkable vertex problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a graph's width: searched, or of a given decomposition
    Width(WidthArgs),
    /// Solve a locally checkable vertex problem over a decomposition
    Solve(SolveArgs),
    /// Per-cut rank and class statistics of a decomposition, as CSV
    Nec(NecArgs),
    /// Run the built-in end-to-end self checks
    Verify,
    /// Generate a graph from a named family
    Gen(GenArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum FormatArg {
    /// Sniff: DIMACS when the file leads with 'p'/'c' lines
    Auto,
    EdgeList,
    Dimacs,
}

#[derive(Copy, Clone, ValueEnum)]
enum FieldArg {
    Q,
    Gf2,
}

impl From<FieldArg> for CutField {
    fn from(f: FieldArg) -> CutField {
        match f {
            FieldArg::Q => CutField::Q,
            FieldArg::Gf2 => CutField::Gf2,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    /// Exact up to --cap vertices, greedy beyond
    Auto,
    Exact,
    Greedy,
}

#[derive(Copy, Clone, ValueEnum)]
enum ObjectiveArg {
    Min,
    Max,
    Feasibility,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Objective {
        match o {
            ObjectiveArg::Min => Objective::Minimize,
            ObjectiveArg::Max => Objective::Maximize,
            ObjectiveArg::Feasibility => Objective::Feasibility,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum VariantArg {
    Coloring,
    RoleAssignment,
    Covering,
    PartialCovering,
}

impl From<VariantArg> for HVariant {
    fn from(v: VariantArg) -> HVariant {
        match v {
            VariantArg::Coloring => HVariant::Coloring,
            VariantArg::RoleAssignment => HVariant::RoleAssignment,
            VariantArg::Covering => HVariant::Covering,
            VariantArg::PartialCovering => HVariant::PartialCovering,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyArg {
    Path,
    Cycle,
    Grid,
    RandomTree,
    Gnp,
    Complete,
    CompleteBipartite,
}

#[derive(Args)]
struct WidthArgs {
    /// Graph file
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
    /// Field the cut rank is taken over
    #[arg(long, value_enum, default_value_t = FieldArg::Q)]
    field: FieldArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Evaluate this decomposition file instead of searching
    #[arg(long)]
    decomp: Option<PathBuf>,
    /// Write the decomposition behind the reported width to this file
    #[arg(long)]
    emit_decomp: Option<PathBuf>,
    /// Seed for the greedy search
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest vertex count the exact search may attempt
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file
    #[arg(long, required_unless_present = "list")]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
    /// Catalog problem name, e.g. dominating-set (see --list)
    #[arg(long)]
    problem: Option<String>,
    /// Degree set for selected vertices: "{0,2}", "N" (anything), "N\{0}"
    #[arg(long, requires = "rho")]
    sigma: Option<String>,
    /// Degree set for unselected vertices, same syntax as --sigma
    #[arg(long, requires = "sigma")]
    rho: Option<String>,
    /// Template graph file for partition problems
    #[arg(long, requires = "variant")]
    hgraph: Option<PathBuf>,
    /// How vertex parts must relate to template adjacency
    #[arg(long, value_enum, requires = "hgraph")]
    variant: Option<VariantArg>,
    /// Override the problem's objective
    #[arg(long, value_enum)]
    objective: Option<ObjectiveArg>,
    /// Run the dynamic program over this decomposition file
    #[arg(long)]
    decomp: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
    /// Print the catalog problem names and exit
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct NecArgs {
    /// Graph file
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
    /// Counting depth d >= 1
    #[arg(short, long, default_value_t = 1)]
    depth: u32,
    /// Decomposition file; searched under Q cut rank when omitted
    #[arg(long)]
    decomp: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Vertex count (first part size for complete-bipartite)
    #[arg(short, long)]
    n: Option<usize>,
    /// Second part size for complete-bipartite
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Edge probability for gnp
    #[arg(short, long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Prints one line to stdout; a closed pipe (e.g. piping into `head`) ends
/// the process quietly instead of panicking.
macro_rules! outln {
    ($($arg:tt)*) => { emit_raw(&format!($($arg)*), true) };
}

fn emit_raw(content: &str, newline: bool) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let result = stdout
        .write_all(content.as_bytes())
        .and_then(|()| if newline { stdout.write_all(b"\n") } else { Ok(()) });
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

macro_rules! input_error_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::input(e.to_string())
            }
        }
    )*};
}

input_error_from!(GraphParseError, DecompError, SearchError, ProblemError, FamilyError);

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        let code = if matches!(e, SolverError::Internal(_)) { 1 } else { 2 };
        CliError { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Width(args) => run_width(args)?,
        Command::Solve(args) => run_solve(args)?,
        Command::Nec(args) => run_nec(args)?,
        Command::Verify => return Ok(run_verify()),
        Command::Gen(args) => run_gen(args)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path, format: FormatArg) -> Result<Graph, CliError> {
    let text = read_file(path)?;
    let format = match format {
        FormatArg::Auto => None,
        FormatArg::EdgeList => Some(GraphFormat::EdgeList),
        FormatArg::Dimacs => Some(GraphFormat::Dimacs),
    };
    Ok(parse_graph(&text, format)?)
}

fn read_decomposition(path: &Path, n: usize) -> Result<BranchDecomposition, CliError> {
    Ok(parse_decomposition(&read_file(path)?, n)?)
}

fn write_or_print(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| CliError::input(format!("{}: {e}", p.display()))),
        None => {
            emit_raw(content, false);
            Ok(())
        }
    }
}

/// Finds or loads the decomposition a subcommand should run over.
fn obtain_decomposition(
    g: &Graph,
    decomp: Option<&Path>,
    field: CutField,
    method: MethodArg,
    cap: usize,
    seed: u64,
) -> Result<(BranchDecomposition, usize, &'static str, bool), CliError> {
    let f = cut_function(field);
    if let Some(path) = decomp {
        let d = read_decomposition(path, g.n())?;
        let width = d.f_width(g, f.as_ref());
        // Up to three vertices every subcubic tree has the same shape.
        return Ok((d, width, "given", g.n() <= 3));
    }
    let result: SearchResult = if g.n() <= 1 {
        find_decomposition(g, f.as_ref(), cap, seed)?
    } else {
        match method {
            MethodArg::Auto => find_decomposition(g, f.as_ref(), cap, seed)?,
            MethodArg::Exact => exact_decomposition(g, f.as_ref(), cap)?,
            MethodArg::Greedy => greedy_decomposition(g, f.as_ref(), seed)?,
        }
    };
    Ok((result.decomposition, result.width, result.method.label(), result.optimal))
}

fn run_width(args: WidthArgs) -> Result<(), CliError> {
    let g = read_graph(&args.graph, args.format)?;
    let field: CutField = args.field.into();
    if g.n() == 0 {
        if args.emit_decomp.is_some() {
            return Err(CliError::input("the empty graph has no decomposition to emit"));
        }
        outln!("width=0 optimal=true method=exact field={}", field.label());
        return Ok(());
    }
    let (d, width, method, optimal) = obtain_decomposition(
        &g,
        args.decomp.as_deref(),
        field,
        args.method,
        args.cap,
        args.seed,
    )?;
    if let Some(path) = &args.emit_decomp {
        write_or_print(Some(path), &format!("{}\n", serialize_decomposition(&d)))?;
    }
    outln!("width={width} optimal={optimal} method={method} field={}", field.label());
    Ok(())
}

fn build_spec(args: &SolveArgs) -> Result<ProblemSpec, CliError> {
    let picked = [args.problem.is_some(), args.sigma.is_some(), args.hgraph.is_some()];
    match picked.iter().filter(|&&p| p).count() {
        0 => {
            return Err(CliError::input(
                "pick a problem: --problem NAME, --sigma S --rho R, or --hgraph FILE --variant V",
            ))
        }
        1 => {}
        _ => return Err(CliError::input("--problem, --sigma/--rho and --hgraph exclude each other")),
    }
    let mut spec = if let Some(name) = &args.problem {
        catalog_lookup(name).map_err(|e| CliError::input(format!("{e} (try --list)")))?
    } else if let Some(sigma) = &args.sigma {
        let rho = args.rho.as_ref().expect("clap enforces the pair");
        ProblemSpec::sigma_rho(
            "custom",
            parse_int_set(sigma)?,
            parse_int_set(rho)?,
            Objective::Minimize,
        )
    } else {
        let h = read_graph(args.hgraph.as_ref().expect("checked above"), FormatArg::Auto)?;
        let variant = args.variant.expect("clap enforces the pair");
        h_variant_spec(&h, variant.into())?
    };
    if let Some(objective) = args.objective {
        spec.objective = objective.into();
    }
    Ok(spec)
}

fn witness_string(spec: &ProblemSpec, assignment: &[usize]) -> String {
    match &spec.constraint {
        Constraint::SigmaRho { .. } => {
            let selected: Vec<String> = assignment
                .iter()
                .enumerate()
                .filter(|(_, &part)| part == 0)
                .map(|(v, _)| v.to_string())
                .collect();
            selected.join(",")
        }
        Constraint::Matrix(d) => {
            let groups: Vec<String> = (0..d.len())
                .map(|part| {
                    let members: Vec<String> = assignment
                        .iter()
                        .enumerate()
                        .filter(|(_, &p)| p == part)
                        .map(|(v, _)| v.to_string())
                        .collect();
                    members.join(",")
                })
                .collect();
            groups.join("|")
        }
    }
}

fn run_solve(args: SolveArgs) -> Result<(), CliError> {
    if args.list {
        for name in catalog_names() {
            outln!("{name}");
        }
        return Ok(());
    }
    let g = read_graph(args.graph.as_ref().expect("clap requires it"), args.format)?;
    let spec = build_spec(&args)?;
    if g.n() == 0 {
        // Nothing to assign: vacuously feasible with an empty selection.
        outln!("status=optimal value=0 witness={}", witness_string(&spec, &[]));
        return Ok(());
    }
    let (d, _, _, _) = obtain_decomposition(
        &g,
        args.decomp.as_deref(),
        CutField::Q,
        MethodArg::Auto,
        args.cap,
        args.seed,
    )?;
    match solve(&g, &d.root_default(), &spec)? {
        SolveOutcome::Optimal { value, assignment } => {
            outln!("status=optimal value={value} witness={}", witness_string(&spec, &assignment));
        }
        SolveOutcome::Infeasible => outln!("status=infeasible"),
    }
    Ok(())
}

fn run_nec(args: NecArgs) -> Result<(), CliError> {
    if args.depth == 0 {
        return Err(CliError::input("--depth must be at least 1"));
    }
    let g = read_graph(&args.graph, args.format)?;
    outln!("cut,size_a,cutrk_q,cutrk_gf2,nec_d,bound");
    if g.n() <= 1 {
        return Ok(());
    }
    let (d, _, _, _) = obtain_decomposition(
        &g,
        args.decomp.as_deref(),
        CutField::Q,
        MethodArg::Auto,
        args.cap,
        args.seed,
    )?;
    for (id, cut) in d.enumerate_cuts().iter().enumerate() {
        let side = &cut.side;
        let q = cut_rank(&g, side, CutField::Q);
        let g2 = cut_rank(&g, side, CutField::Gf2);
        let classes = nec::nec_count(&g, side, args.depth)
            .max(nec::nec_count(&g, &side.complement(), args.depth));
        let bound = nec::class_count_bound(&g, side, args.depth);
        outln!("{id},{},{q},{g2},{classes},{bound}", side.len());
    }
    Ok(())
}

fn run_verify() -> ExitCode {
    let results = verify::run_all();
    let mut failed = 0usize;
    for r in &results {
        let tag = if r.pass { "ok  " } else { "FAIL" };
        outln!("{tag} {:>2} {}: {}", r.id, r.name, r.detail);
        if !r.pass {
            failed += 1;
        }
    }
    outln!("{} checks, {} passed, {failed} failed", results.len(), results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::input(format!("{flag} is required for this family")))
}

fn run_gen(args: GenArgs) -> Result<(), CliError> {
    let g = match args.family {
        FamilyArg::Path => family::path(need(args.n, "-n")?)?,
        FamilyArg::Cycle => family::cycle(need(args.n, "-n")?)?,
        FamilyArg::Grid => family::grid(need(args.rows, "--rows")?, need(args.cols, "--cols")?)?,
        FamilyArg::RandomTree => family::random_tree(need(args.n, "-n")?, args.seed)?,
        FamilyArg::Gnp => {
            let p = args.p.ok_or_else(|| CliError::input("-p is required for gnp"))?;
            family::gnp(need(args.n, "-n")?, p, args.seed)?
        }
        FamilyArg::Complete => family::complete(need(args.n, "-n")?),
        FamilyArg::CompleteBipartite => {
            family::complete_bipartite(need(args.n, "-n")?, need(args.b, "--b")?)
        }
    };
    write_or_print(args.output.as_deref(), &g.to_edge_list_string())
}
