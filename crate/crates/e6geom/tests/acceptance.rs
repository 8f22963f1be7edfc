//! End-to-end acceptance: one integration test per acceptance criterion
//! (AC1..AC9), so the harness output carries exactly one pass/fail line per
//! criterion. Each criterion is evaluated at p = 5, d = 2 across three
//! seeds, at the default trial counts of the verification suites.

use e6geom::report::{Check, Status};
use e6geom::suites::{
    chain_report, run_verify, verify_report, PointSpec, SuiteConfig, SuiteName,
};
use e6geom::ExecMode;
use std::sync::OnceLock;

const SEEDS: [u64; 3] = [1, 2, 3];
const TRIALS: u64 = 1000;

fn config(seed: u64) -> SuiteConfig {
    SuiteConfig::resolve(5, Some(2), seed, TRIALS, 1000, ExecMode::Parallel, false)
        .expect("p = 5, d = 2 is a valid configuration")
}

fn per_seed(suite: SuiteName, cell: &'static OnceLock<Vec<Vec<Check>>>) -> &'static [Vec<Check>] {
    cell.get_or_init(|| SEEDS.iter().map(|&s| run_verify(&config(s), suite)).collect())
}

fn octonion_runs() -> &'static [Vec<Check>] {
    static C: OnceLock<Vec<Vec<Check>>> = OnceLock::new();
    per_seed(SuiteName::Octonion, &C)
}

fn albert_runs() -> &'static [Vec<Check>] {
    static C: OnceLock<Vec<Vec<Check>>> = OnceLock::new();
    per_seed(SuiteName::Albert, &C)
}

fn brown_runs() -> &'static [Vec<Check>] {
    static C: OnceLock<Vec<Vec<Check>>> = OnceLock::new();
    per_seed(SuiteName::Brown, &C)
}

fn geometry_runs() -> &'static [Vec<Check>] {
    static C: OnceLock<Vec<Vec<Check>>> = OnceLock::new();
    per_seed(SuiteName::Geometry, &C)
}

fn weyl_run() -> &'static Vec<Check> {
    // The combinatorial suite takes no field or randomness; one run suffices.
    static C: OnceLock<Vec<Check>> = OnceLock::new();
    C.get_or_init(|| run_verify(&config(SEEDS[0]), SuiteName::Weyl))
}

fn named<'a>(checks: &'a [Check], name: &str) -> &'a Check {
    checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("check '{name}' missing from the suite output"))
}

fn witness_u64(c: &Check, key: &str) -> u64 {
    c.witness
        .get(key)
        .and_then(|v| v.as_u64())
        .unwrap_or_else(|| panic!("check '{}' has no numeric witness '{key}'", c.name))
}

fn assert_pass(c: &Check) {
    assert_eq!(
        c.status,
        Status::Pass,
        "check '{}' did not pass: witness = {}",
        c.name,
        c.witness
    );
}

#[test]
fn ac1_algebra_identities_hold_exactly_over_both_fields() {
    for (oct, alb) in octonion_runs().iter().zip(albert_runs()) {
        let ac1: Vec<&Check> = oct
            .iter()
            .chain(alb.iter())
            .filter(|c| c.name.starts_with("ac1_"))
            .collect();
        assert_eq!(ac1.len(), 12, "six identities over two fields");
        for c in ac1 {
            assert_pass(c);
            assert!(c.samples >= 1000, "check '{}' ran {} < 1000 samples", c.name, c.samples);
        }
    }
}

#[test]
fn ac2_rank1_constants_are_exact() {
    for alb in albert_runs() {
        let dim = named(alb, "ac2_rank1_cross_space_dim");
        assert_pass(dim);
        assert!(dim.samples >= 100);
        let pair = named(alb, "ac2_rank1_pair_cross_rank");
        assert_pass(pair);
        assert!(pair.samples >= 500);
        let triple = named(alb, "ac2_rank1_triple_in_span");
        assert_pass(triple);
        assert!(triple.samples >= 500);
    }
}

#[test]
fn ac3_brown_layer_structure_holds_and_closure_is_recorded() {
    for brown in brown_runs() {
        let involution = named(brown, "ac3_involution_antiautomorphism");
        assert_pass(involution);
        assert!(involution.samples >= 500);
        let skew = named(brown, "ac3_skew_space_dimension");
        assert_pass(skew);
        assert_eq!(witness_u64(skew, "dim"), 1);
        let square = named(brown, "ac3_skew_generator_square");
        assert_pass(square);
        assert_eq!(witness_u64(square, "type"), 2);
        let twist = named(brown, "ac3_twist_multiplicative");
        assert_pass(twist);
        assert!(twist.samples >= 500);
        let quat = named(brown, "ac3_quaternion_points_valid");
        assert_pass(quat);
        assert!(quat.samples >= 100);
        let block = named(brown, "ac3_block_space_dimension");
        assert_pass(block);
        // The closure diagnostic is measured and recorded, never asserted —
        // and never counted as a pass.
        let closure = named(brown, "ac3_block_closure_diagnostic");
        assert_eq!(closure.status, Status::Recorded);
        let runs = closure.witness.get("runs").and_then(|v| v.as_array()).expect("runs");
        assert!(!runs.is_empty());
        for run in runs {
            assert_eq!(run.get("input_dim").and_then(|v| v.as_u64()), Some(22));
        }
    }
}

#[test]
fn ac4_general_line_pairs_meet_in_one_class_with_both_branches() {
    for geom in geometry_runs() {
        let c = named(geom, "ac4_general_position_meet");
        assert_pass(c);
        assert!(witness_u64(c, "general_pairs") >= 500);
        assert!(witness_u64(c, "point_branch") >= 10);
        assert!(witness_u64(c, "isotropic_branch") >= 10);
        assert_eq!(witness_u64(c, "failures"), 0);
    }
}

#[test]
fn ac5_special_pairs_enumerate_exhaustively() {
    for geom in geometry_runs() {
        let c = named(geom, "ac5_special_intersection_census");
        assert_pass(c);
        assert!(witness_u64(c, "pairs") >= 20);
        assert_eq!(witness_u64(c, "class_count"), 406_901);
        assert!(witness_u64(c, "sampled_points_checked") >= 20);
        assert_eq!(witness_u64(c, "failures"), 0);
    }
}

#[test]
fn ac6_line_quadrics_are_split_of_rank_10() {
    for geom in geometry_runs() {
        let c = named(geom, "ac6_line_quadric_invariants");
        assert_pass(c);
        assert!(c.samples >= 50);
        assert_eq!(witness_u64(c, "samples_per_line"), 100);
        assert_eq!(witness_u64(c, "failures"), 0);
    }
}

#[test]
fn ac7_weyl_combinatorics_match_the_geometry() {
    let weyl = weyl_run();
    for name in [
        "ac7_group_order",
        "ac7_double_cosets_point_point",
        "ac7_double_cosets_point_line",
        "ac7_minuscule_diagram",
        "ac7_diagram_cuts",
        "ac7_stratification_pair_identity",
        "ac7_stratification_flag_identity",
    ] {
        assert_pass(named(weyl, name));
    }
    assert_eq!(witness_u64(named(weyl, "ac7_group_order"), "order"), 51_840);
    assert_eq!(witness_u64(named(weyl, "ac7_double_cosets_point_point"), "count"), 3);
    assert_eq!(witness_u64(named(weyl, "ac7_double_cosets_point_line"), "count"), 3);
    assert_eq!(witness_u64(named(weyl, "ac7_minuscule_diagram"), "nodes"), 27);
}

#[test]
fn ac8_chains_connect_all_pairs_deterministically() {
    for geom in geometry_runs() {
        let c = named(geom, "ac8_chain_construction");
        assert_pass(c);
        assert!(c.samples >= 100);
        assert_eq!(witness_u64(c, "failures"), 0);
    }
    // Determinism: the chain command reproduces its report byte for byte at
    // a fixed seed.
    let cfg = config(SEEDS[0]);
    let r1 = chain_report(&cfg, &PointSpec::Random, &PointSpec::Random).expect("valid specs");
    let r2 = chain_report(&cfg, &PointSpec::Random, &PointSpec::Random).expect("valid specs");
    assert_eq!(r1.to_json(), r2.to_json());
    assert_eq!(r1.summary.failed, 0);
}

#[test]
fn ac9_out_of_scope_claims_are_listed_but_never_pass() {
    let report = verify_report(&config(SEEDS[0]), SuiteName::Octonion);
    let na: Vec<&Check> = report.checks.iter().filter(|c| c.name.starts_with("na_")).collect();
    assert_eq!(na.len(), 3, "all out-of-scope claims are enumerated");
    for c in na {
        assert_eq!(c.status, Status::NotApplicable, "'{}' must not be asserted", c.name);
        assert!(c.witness.get("reason").is_some());
    }
    assert_eq!(report.summary.not_applicable, 3);
    // They are never counted as passing.
    let passes_among_na = report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("na_") && c.status == Status::Pass)
        .count();
    assert_eq!(passes_among_na, 0);
}
