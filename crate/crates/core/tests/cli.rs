//! End-to-end runs of the `qrw` binary: output formats, exit codes, and
//! file round trips.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_qrw");

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn qrw(args: &[&str]) -> Run {
    let output = Command::new(BIN).args(args).output().expect("binary runs");
    Run {
        stdout: String::from_utf8(output.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf8 stderr"),
        code: output.status.code().expect("no signal"),
    }
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qrw-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn gen_width_solve_round_trip() {
    let dir = scratch_dir("round-trip");
    let graph = dir.join("c5.txt");
    let decomp = dir.join("c5.dec");

    let gen = qrw(&["gen", "--family", "cycle", "-n", "5", "-o", graph.to_str().unwrap()]);
    assert_eq!(gen.code, 0, "{}", gen.stderr);
    assert!(fs::read_to_string(&graph).unwrap().starts_with("5 5\n"));

    let width = qrw(&[
        "width",
        "--graph",
        graph.to_str().unwrap(),
        "--emit-decomp",
        decomp.to_str().unwrap(),
    ]);
    assert_eq!(width.code, 0, "{}", width.stderr);
    assert_eq!(width.stdout, "width=2 optimal=true method=exact field=q\n");

    // The emitted decomposition reproduces the same width when given back.
    let again = qrw(&[
        "width",
        "--graph",
        graph.to_str().unwrap(),
        "--decomp",
        decomp.to_str().unwrap(),
    ]);
    assert_eq!(again.code, 0, "{}", again.stderr);
    assert_eq!(again.stdout, "width=2 optimal=false method=given field=q\n");

    let solve = qrw(&[
        "solve",
        "--graph",
        graph.to_str().unwrap(),
        "--problem",
        "dominating-set",
        "--decomp",
        decomp.to_str().unwrap(),
    ]);
    assert_eq!(solve.code, 0, "{}", solve.stderr);
    assert!(solve.stdout.starts_with("status=optimal value=2 witness="), "{}", solve.stdout);

    let _ = fs::remove_dir_all(dir);
}

#[test]
fn nec_emits_a_csv_row_per_cut() {
    let dir = scratch_dir("nec");
    let graph = dir.join("c4.txt");
    qrw(&["gen", "--family", "cycle", "-n", "4", "-o", graph.to_str().unwrap()]);

    let nec = qrw(&["nec", "--graph", graph.to_str().unwrap(), "-d", "2"]);
    assert_eq!(nec.code, 0, "{}", nec.stderr);
    let lines: Vec<&str> = nec.stdout.lines().collect();
    assert_eq!(lines[0], "cut,size_a,cutrk_q,cutrk_gf2,nec_d,bound");
    // A branch decomposition of an n-vertex graph has 2n - 3 tree edges.
    assert_eq!(lines.len(), 1 + 5);
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), 6, "{row}");
    }

    let _ = fs::remove_dir_all(dir);
}

#[test]
fn dimacs_input_is_accepted() {
    let dir = scratch_dir("dimacs");
    let graph = dir.join("p4.col");
    fs::write(&graph, "c a path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n").unwrap();

    for format in ["auto", "dimacs"] {
        let width = qrw(&["width", "--graph", graph.to_str().unwrap(), "--format", format]);
        assert_eq!(width.code, 0, "{}", width.stderr);
        assert_eq!(width.stdout, "width=1 optimal=true method=exact field=q\n");
    }

    let _ = fs::remove_dir_all(dir);
}

#[test]
fn greedy_runs_are_deterministic_per_seed() {
    let dir = scratch_dir("greedy");
    let graph = dir.join("k33.txt");
    qrw(&[
        "gen",
        "--family",
        "complete-bipartite",
        "-n",
        "3",
        "--b",
        "3",
        "-o",
        graph.to_str().unwrap(),
    ]);

    let args = ["width", "--graph", graph.to_str().unwrap(), "--method", "greedy", "--seed", "3"];
    let first = qrw(&args);
    let second = qrw(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, second.stdout);
    assert!(first.stdout.contains("method=greedy"), "{}", first.stdout);

    let _ = fs::remove_dir_all(dir);
}

#[test]
fn custom_sigma_rho_and_template_problems_run() {
    let dir = scratch_dir("problems");
    let c6 = dir.join("c6.txt");
    let k2 = dir.join("k2.txt");
    qrw(&["gen", "--family", "cycle", "-n", "6", "-o", c6.to_str().unwrap()]);
    qrw(&["gen", "--family", "complete", "-n", "2", "-o", k2.to_str().unwrap()]);

    // Independent set as a raw (sigma, rho) pair.
    let max_is = qrw(&[
        "solve",
        "--graph",
        c6.to_str().unwrap(),
        "--sigma",
        "{0}",
        "--rho",
        "N",
        "--objective",
        "max",
    ]);
    assert_eq!(max_is.code, 0, "{}", max_is.stderr);
    assert!(max_is.stdout.starts_with("status=optimal value=3 "), "{}", max_is.stdout);

    // C6 covers K2 in the role-respecting sense but not degree-exactly.
    let role = qrw(&[
        "solve",
        "--graph",
        c6.to_str().unwrap(),
        "--hgraph",
        k2.to_str().unwrap(),
        "--variant",
        "role-assignment",
    ]);
    assert!(role.stdout.starts_with("status=optimal"), "{}", role.stdout);
    let covering = qrw(&[
        "solve",
        "--graph",
        c6.to_str().unwrap(),
        "--hgraph",
        k2.to_str().unwrap(),
        "--variant",
        "covering",
    ]);
    assert_eq!(covering.code, 0, "{}", covering.stderr);
    assert_eq!(covering.stdout, "status=infeasible\n");

    let _ = fs::remove_dir_all(dir);
}

#[test]
fn bad_input_exits_2() {
    let run = qrw(&["width", "--graph", "/nonexistent/file.txt"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.starts_with("error: "), "{}", run.stderr);

    let dir = scratch_dir("bad-input");
    let graph = dir.join("bad.txt");
    fs::write(&graph, "2 1\n0 5\n").unwrap();
    let parse = qrw(&["width", "--graph", graph.to_str().unwrap()]);
    assert_eq!(parse.code, 2);

    let good = dir.join("good.txt");
    fs::write(&good, "2 1\n0 1\n").unwrap();
    let unknown = qrw(&["solve", "--graph", good.to_str().unwrap(), "--problem", "nope"]);
    assert_eq!(unknown.code, 2);
    let conflicting = qrw(&[
        "solve",
        "--graph",
        good.to_str().unwrap(),
        "--problem",
        "dominating-set",
        "--sigma",
        "{0}",
        "--rho",
        "N",
    ]);
    assert_eq!(conflicting.code, 2);

    let _ = fs::remove_dir_all(dir);
}

#[test]
fn one_vertex_and_empty_graphs_are_handled() {
    let dir = scratch_dir("tiny");
    let one = dir.join("one.txt");
    let zero = dir.join("zero.txt");
    fs::write(&one, "1 0\n").unwrap();
    fs::write(&zero, "0 0\n").unwrap();

    for path in [&one, &zero] {
        let width = qrw(&["width", "--graph", path.to_str().unwrap()]);
        assert_eq!(width.code, 0, "{}", width.stderr);
        assert!(width.stdout.starts_with("width=0 optimal=true"), "{}", width.stdout);
    }
    let solve = qrw(&["solve", "--graph", one.to_str().unwrap(), "--problem", "dominating-set"]);
    assert_eq!(solve.stdout, "status=optimal value=1 witness=0\n");
    let empty = qrw(&["solve", "--graph", zero.to_str().unwrap(), "--problem", "dominating-set"]);
    assert_eq!(empty.stdout, "status=optimal value=0 witness=\n");

    let _ = fs::remove_dir_all(dir);
}

#[test]
fn verify_subcommand_reports_every_check() {
    let run = qrw(&["verify"]);
    assert_eq!(run.code, 0, "{}\n{}", run.stdout, run.stderr);
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(lines.len(), 11, "{}", run.stdout);
    assert!(lines[..10].iter().all(|l| l.starts_with("ok ")), "{}", run.stdout);
    assert_eq!(lines[10], "10 checks, 10 passed, 0 failed");
}
