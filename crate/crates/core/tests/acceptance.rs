//! The crate's acceptance gate: every headline claim as its own test, one
//! printed pass/fail line each (visible with `--nocapture`, and always via
//! `qrw verify`, which runs the same checks).

use qrw::verify::{self, CheckResult};

fn report(result: CheckResult) {
    let status = if result.pass { "pass" } else { "FAIL" };
    println!("acceptance {:>2} [{status}] {} ({})", result.id, result.name, result.detail);
    assert!(result.pass, "{}: {}", result.name, result.detail);
}

#[test]
fn check_01_printed_matrix_has_rank_4() {
    report(verify::check_printed_matrix_rank());
}

#[test]
fn check_02_solver_equals_brute_force_on_the_corpus() {
    report(verify::check_solver_matches_brute_force());
}

#[test]
fn check_03_class_count_bound_holds() {
    report(verify::check_class_count_bound());
}

#[test]
fn check_04_representative_reduction_is_sound() {
    report(verify::check_representative_reduction());
}

#[test]
fn check_05_rank_chain_holds() {
    report(verify::check_rank_chain());
}

#[test]
fn check_06_family_widths_match_known_values() {
    report(verify::check_family_widths());
}

#[test]
fn check_07_catalog_depths_match_known_values() {
    report(verify::check_catalog_depths());
}

#[test]
fn check_08_solved_value_is_decomposition_independent() {
    report(verify::check_decomposition_independence());
}

#[test]
fn check_09_class_enumeration_matches_brute_force() {
    report(verify::check_class_enumeration());
}

#[test]
fn check_10_capped_counting_is_sound() {
    report(verify::check_capped_counting());
}
