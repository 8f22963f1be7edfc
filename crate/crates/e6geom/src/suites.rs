//! The verification suites behind the command-line interface and the
//! acceptance tests.
//!
//! Every check is deterministic for a fixed `(p, d, seed, trials)`: each
//! trial derives its randomness from a counter-based stream, parallel sweeps
//! combine partial results in a fixed order, and reports sort their checks
//! by name. Claim tags `AC1`..`AC9` name the acceptance criteria catalogued
//! in the README; `na_*` checks list adjacent claims that are out of scope
//! by design and are never marked as passing.

use crate::albert::{cross_space, sample_rank1, AlbertElement};
use crate::brown::{
    block_space, brown_type, closure_diagnostic, flatten, quaternion_from, skew_generator,
    skew_space, BrownElement,
};
use crate::field::{is_prime, Field, FieldElem, Fq, PrimeField, QuadExt, MAX_P};
use crate::geometry::{
    chain, common_points_special, meet, meet_class, sample_line, sample_point, special_line_pair,
    CollectMode, GeomError, IsotropicSampler, PairPosition, Point, ENUMERATION_CAP,
};
use crate::linalg::scalar_multiple_of;
use crate::octonion::Octonion;
use crate::par::{map_indexed, trial_rng, ExecMode};
use crate::report::{Check, Report, ReportConfig, Status};
use crate::weyl::{self, verify_stratification, MinusculePoset, WeylGroup};
use rand_chacha::ChaCha12Rng;
use serde_json::json;
use std::fmt;
use std::time::Instant;

pub const DEFAULT_TRIALS: u64 = 1000;
pub const DEFAULT_BUDGET: u64 = 1000;

/// Rejected run configuration: the process should exit with status 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigError {
    NotPrime(u64),
    PrimeTooSmall(u64),
    PrimeTooLarge(u64),
    NotANonSquare { d: u64, p: u64 },
    UnknownSuite(String),
    UnknownCountTarget(String),
    BadPointSpec(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::NotPrime(p) => write!(f, "p = {p} is not prime"),
            ConfigError::PrimeTooSmall(p) => write!(f, "p = {p} is below the minimum of 5"),
            ConfigError::PrimeTooLarge(p) => write!(f, "p = {p} exceeds the limit {MAX_P}"),
            ConfigError::NotANonSquare { d, p } => {
                write!(f, "d = {d} is not a quadratic non-residue modulo {p}")
            }
            ConfigError::UnknownSuite(s) => write!(
                f,
                "unknown suite '{s}' (expected octonion, albert, brown, geometry, weyl, or all)"
            ),
            ConfigError::UnknownCountTarget(s) => write!(
                f,
                "unknown count target '{s}' (expected special-intersection or line-quadric)"
            ),
            ConfigError::BadPointSpec(s) => write!(f, "bad point spec: {s}"),
        }
    }
}

/// A validated run configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub p: u64,
    pub d: u64,
    pub seed: u64,
    pub trials: u64,
    pub budget: u64,
    pub mode: ExecMode,
    pub timings: bool,
}

impl SuiteConfig {
    /// Validates `p` and resolves `d` (defaulting to the smallest
    /// non-residue).
    pub fn resolve(
        p: u64,
        d: Option<u64>,
        seed: u64,
        trials: u64,
        budget: u64,
        mode: ExecMode,
        timings: bool,
    ) -> Result<SuiteConfig, ConfigError> {
        if p < 5 {
            return if is_prime(p) {
                Err(ConfigError::PrimeTooSmall(p))
            } else {
                Err(ConfigError::NotPrime(p))
            };
        }
        if p >= MAX_P {
            return Err(ConfigError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ConfigError::NotPrime(p));
        }
        let base = PrimeField::new(p).expect("validated prime");
        let d = match d {
            Some(d) => {
                let dr = d % p;
                let euler = base.elem(dr).pow((p - 1) / 2);
                if dr == 0 || euler.val() != p - 1 {
                    return Err(ConfigError::NotANonSquare { d, p });
                }
                dr
            }
            None => base.smallest_nonsquare(),
        };
        Ok(SuiteConfig { p, d, seed, trials: trials.max(1), budget: budget.max(1), mode, timings })
    }

    pub fn base(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated prime")
    }

    pub fn ext(&self) -> QuadExt {
        QuadExt::new(self.p, self.d).expect("validated non-residue")
    }
}

/// Which suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Octonion,
    Albert,
    Brown,
    Geometry,
    Weyl,
    All,
}

impl SuiteName {
    pub fn parse(s: &str) -> Result<SuiteName, ConfigError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "octonion" => Ok(SuiteName::Octonion),
            "albert" => Ok(SuiteName::Albert),
            "brown" => Ok(SuiteName::Brown),
            "geometry" => Ok(SuiteName::Geometry),
            "weyl" => Ok(SuiteName::Weyl),
            "all" => Ok(SuiteName::All),
            other => Err(ConfigError::UnknownSuite(other.to_string())),
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SuiteName::Octonion => "octonion",
            SuiteName::Albert => "albert",
            SuiteName::Brown => "brown",
            SuiteName::Geometry => "geometry",
            SuiteName::Weyl => "weyl",
            SuiteName::All => "all",
        };
        write!(f, "{s}")
    }
}

// Disjoint RNG stream blocks per check, so adding or reordering checks never
// perturbs another check's samples.
const fn stream(block: u64) -> u64 {
    block << 32
}

const B_OCT_NORM_FP: u64 = 1;
const B_OCT_NORM_FQ: u64 = 2;
const B_ALB_DUALITY_FP: u64 = 3;
const B_ALB_DUALITY_FQ: u64 = 4;
const B_ALB_DOUBLE_ADJ_FP: u64 = 5;
const B_ALB_DOUBLE_ADJ_FQ: u64 = 6;
const B_ALB_CROSS_SELF_FP: u64 = 7;
const B_ALB_CROSS_SELF_FQ: u64 = 8;
const B_ALB_SYMMETRY_FP: u64 = 9;
const B_ALB_SYMMETRY_FQ: u64 = 10;
const B_ALB_JORDAN_FP: u64 = 11;
const B_ALB_JORDAN_FQ: u64 = 12;
const B_RANK1_SPACE: u64 = 13;
const B_RANK1_PAIR: u64 = 14;
const B_RANK1_TRIPLE: u64 = 15;
const B_BROWN_BAR: u64 = 16;
const B_BROWN_TWIST: u64 = 17;
const B_BROWN_QUAT: u64 = 18;
const B_BROWN_BLOCK: u64 = 19;
const B_BROWN_CLOSURE: u64 = 20;
const B_GEOM_GENERAL: u64 = 21;
const B_GEOM_SPECIAL: u64 = 22;
const B_GEOM_QUADRIC: u64 = 23;
const B_GEOM_CHAIN: u64 = 24;
const B_CHAIN_FROM: u64 = 25;
const B_CHAIN_TO: u64 = 26;
const B_CHAIN_RUN: u64 = 27;
const B_COUNT_SPECIAL: u64 = 28;
const B_COUNT_QUADRIC: u64 = 29;

fn finish(cfg: &SuiteConfig, t0: Instant, check: Check) -> Check {
    if cfg.timings {
        check.with_wall_ms(Some(t0.elapsed().as_millis() as u64))
    } else {
        check
    }
}

/// Runs one trial per index in the configured execution mode and counts
/// failures; each trial sees its own RNG stream.
fn count_failures<T>(cfg: &SuiteConfig, block: u64, n: u64, per_trial: T) -> u64
where
    T: Fn(&mut ChaCha12Rng) -> bool + Sync + Send,
{
    map_indexed(cfg.mode, n as usize, |i| {
        let mut rng = trial_rng(cfg.seed, stream(block) + i as u64);
        u64::from(!per_trial(&mut rng))
    })
    .into_iter()
    .sum()
}

// -- octonion suite ---------------------------------------------------------------

fn octonion_norm_check<F>(cfg: &SuiteConfig, field: F, block: u64, name: &str) -> Check
where
    F: Field + Copy + Send + Sync,
{
    let t0 = Instant::now();
    let failures = count_failures(cfg, block, cfg.trials, |rng| {
        let x: Octonion<F::Elem> = Octonion::sample(field, rng);
        let y: Octonion<F::Elem> = Octonion::sample(field, rng);
        (x * y).norm() == x.norm() * y.norm()
    });
    finish(
        cfg,
        t0,
        Check::counted(
            name,
            "AC1: the octonion norm is multiplicative, n(xy) = n(x)n(y)",
            cfg.trials,
            failures,
        ),
    )
}

pub fn suite_octonion(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        octonion_norm_check(cfg, cfg.base(), B_OCT_NORM_FP, "ac1_oct_norm_multiplicative_base"),
        octonion_norm_check(cfg, cfg.ext(), B_OCT_NORM_FQ, "ac1_oct_norm_multiplicative_ext"),
    ]
}

// -- albert suite ----------------------------------------------------------------

fn albert_identity_check<F, T>(
    cfg: &SuiteConfig,
    field: F,
    block: u64,
    name: &str,
    claim: &str,
    test: T,
) -> Check
where
    F: Field + Copy + Send + Sync,
    T: Fn(F, &mut ChaCha12Rng) -> bool + Sync + Send,
{
    let t0 = Instant::now();
    let failures = count_failures(cfg, block, cfg.trials, |rng| test(field, rng));
    finish(cfg, t0, Check::counted(name, claim, cfg.trials, failures))
}

fn albert_identity_checks<F>(cfg: &SuiteConfig, field: F, blocks: [u64; 5], tag: &str) -> Vec<Check>
where
    F: Field + Copy + Send + Sync,
{
    vec![
        albert_identity_check(
            cfg,
            field,
            blocks[0],
            &format!("ac1_adjoint_trace_duality_{tag}"),
            "AC1: T(x#, y) equals the directional derivative of the cubic norm at x along y",
            |f, rng| {
                let x: AlbertElement<F::Elem> = AlbertElement::sample(f, rng);
                let y: AlbertElement<F::Elem> = AlbertElement::sample(f, rng);
                x.adjoint().trace_form(&y) == x.dnorm(&y)
            },
        ),
        albert_identity_check(
            cfg,
            field,
            blocks[1],
            &format!("ac1_double_adjoint_{tag}"),
            "AC1: (x#)# = N(x) x",
            |f, rng| {
                let x: AlbertElement<F::Elem> = AlbertElement::sample(f, rng);
                x.adjoint().adjoint() == x.scale(x.norm())
            },
        ),
        albert_identity_check(
            cfg,
            field,
            blocks[2],
            &format!("ac1_cross_bilinearizes_adjoint_{tag}"),
            "AC1: x cross x = 2 x#",
            |f, rng| {
                let x: AlbertElement<F::Elem> = AlbertElement::sample(f, rng);
                x.cross(&x) == x.adjoint().scale(f.from_int(2))
            },
        ),
        albert_identity_check(
            cfg,
            field,
            blocks[3],
            &format!("ac1_cross_trace_symmetric_{tag}"),
            "AC1: T(x cross y, z) is totally symmetric in x, y, z",
            |f, rng| {
                let x: AlbertElement<F::Elem> = AlbertElement::sample(f, rng);
                let y: AlbertElement<F::Elem> = AlbertElement::sample(f, rng);
                let z: AlbertElement<F::Elem> = AlbertElement::sample(f, rng);
                let t1 = x.cross(&y).trace_form(&z);
                let t2 = x.cross(&z).trace_form(&y);
                let t3 = y.cross(&z).trace_form(&x);
                t1 == t2 && t2 == t3
            },
        ),
        albert_identity_check(
            cfg,
            field,
            blocks[4],
            &format!("ac1_jordan_identity_{tag}"),
            "AC1: the Jordan identity (x^2 o y) o x = x^2 o (y o x) holds",
            |f, rng| {
                let x: AlbertElement<F::Elem> = AlbertElement::sample(f, rng);
                let y: AlbertElement<F::Elem> = AlbertElement::sample(f, rng);
                let x2 = x.jordan_mul(&x);
                x2.jordan_mul(&y).jordan_mul(&x) == x2.jordan_mul(&y.jordan_mul(&x))
            },
        ),
    ]
}

pub fn suite_albert(cfg: &SuiteConfig) -> Vec<Check> {
    let k = cfg.ext();
    let mut checks = albert_identity_checks(
        cfg,
        cfg.base(),
        [
            B_ALB_DUALITY_FP,
            B_ALB_DOUBLE_ADJ_FP,
            B_ALB_CROSS_SELF_FP,
            B_ALB_SYMMETRY_FP,
            B_ALB_JORDAN_FP,
        ],
        "base",
    );
    checks.extend(albert_identity_checks(
        cfg,
        k,
        [
            B_ALB_DUALITY_FQ,
            B_ALB_DOUBLE_ADJ_FQ,
            B_ALB_CROSS_SELF_FQ,
            B_ALB_SYMMETRY_FQ,
            B_ALB_JORDAN_FQ,
        ],
        "ext",
    ));

    let t0 = Instant::now();
    let dim_trials = (cfg.trials / 10).max(1);
    let failures = count_failures(cfg, B_RANK1_SPACE, dim_trials, |rng| {
        let e = sample_rank1(k, rng);
        cross_space(&e).map(|s| s.dim()) == Ok(10)
    });
    checks.push(finish(
        cfg,
        t0,
        Check::counted(
            "ac2_rank1_cross_space_dim",
            "AC2: for rank-1 e, the image e cross A is 10-dimensional",
            dim_trials,
            failures,
        ),
    ));

    let t0 = Instant::now();
    let pair_trials = (cfg.trials / 2).max(1);
    let failures = count_failures(cfg, B_RANK1_PAIR, pair_trials, |rng| {
        let e = sample_rank1(k, rng);
        let f = sample_rank1(k, rng);
        e.cross(&f).adjoint().is_zero()
    });
    checks.push(finish(
        cfg,
        t0,
        Check::counted(
            "ac2_rank1_pair_cross_rank",
            "AC2: the cross of two rank-1 elements has zero adjoint (rank at most 1)",
            pair_trials,
            failures,
        ),
    ));

    let t0 = Instant::now();
    let failures = count_failures(cfg, B_RANK1_TRIPLE, pair_trials, |rng| {
        let e = sample_rank1(k, rng);
        let a: AlbertElement<Fq> = AlbertElement::sample(k, rng);
        let b: AlbertElement<Fq> = AlbertElement::sample(k, rng);
        e.cross(&a).cross(&e.cross(&b)) == e.scale(e.trace_form(&a.cross(&b)))
    });
    checks.push(finish(
        cfg,
        t0,
        Check::counted(
            "ac2_rank1_triple_in_span",
            "AC2: (e cross a) cross (e cross b) = T(e, a cross b) e stays in the span of e",
            pair_trials,
            failures,
        ),
    ));

    checks
}

// -- brown suite -----------------------------------------------------------------

pub fn suite_brown(cfg: &SuiteConfig) -> Vec<Check> {
    let k = cfg.ext();
    let mut checks = Vec::new();

    let t0 = Instant::now();
    let pair_trials = (cfg.trials / 2).max(1);
    let failures = count_failures(cfg, B_BROWN_BAR, pair_trials, |rng| {
        let x = BrownElement::sample(k, rng);
        let y = BrownElement::sample(k, rng);
        x.mul(&y).bar() == y.bar().mul(&x.bar())
    });
    checks.push(finish(
        cfg,
        t0,
        Check::counted(
            "ac3_involution_antiautomorphism",
            "AC3: the involution reverses products, bar(xy) = bar(y) bar(x)",
            pair_trials,
            failures,
        ),
    ));

    let t0 = Instant::now();
    let skew = skew_space(k);
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac3_skew_space_dimension",
            "AC3: the skew space of the involution is exactly 1-dimensional",
            if skew.dim() == 1 { Status::Pass } else { Status::Fail },
            1,
            json!({ "dim": skew.dim() }),
        ),
    ));

    let t0 = Instant::now();
    let s0 = skew_generator(k);
    let d_elem = k.elem(cfg.d, 0);
    let squares_to_d = s0.mul(&s0) == BrownElement::one(k).scale(d_elem);
    let ty = brown_type(k);
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac3_skew_generator_square",
            "AC3: the skew generator squares to d (a non-square), so the twist has quadratic type",
            if squares_to_d && ty == 2 { Status::Pass } else { Status::Fail },
            1,
            json!({ "d": cfg.d, "type": ty }),
        ),
    ));

    let t0 = Instant::now();
    let failures = count_failures(cfg, B_BROWN_TWIST, pair_trials, |rng| {
        let x = BrownElement::sample(k, rng);
        let y = BrownElement::sample(k, rng);
        x.mul(&y).twist() == x.twist().mul(&y.twist())
    });
    checks.push(finish(
        cfg,
        t0,
        Check::counted(
            "ac3_twist_multiplicative",
            "AC3: the semilinear twist is an automorphism of the product",
            pair_trials,
            failures,
        ),
    ));

    let t0 = Instant::now();
    let quat_trials = (cfg.trials / 10).max(1);
    let failures = count_failures(cfg, B_BROWN_QUAT, quat_trials, |rng| {
        // Rank-1 classes with zero pairing are legitimately rejected by the
        // constructor; the claim is about its successful outputs, so redraw.
        let mut found = None;
        for _ in 0..1000 {
            let e = sample_rank1(k, rng);
            if let Ok(qp) = quaternion_from(&e) {
                found = Some(qp);
                break;
            }
        }
        let qp = match found {
            Some(qp) => qp,
            None => return false,
        };
        if !qp.h.is_in_base() || qp.h.is_zero() {
            return false;
        }
        if qp.x.mul(&qp.x) != BrownElement::one(k).scale(qp.h) {
            return false;
        }
        let span = qp.span_f();
        if span.dim() != 4 {
            return false;
        }
        let basis = qp.span_basis();
        for a in &basis {
            if !span.contains(&flatten(&a.twist())) || !span.contains(&flatten(&a.bar())) {
                return false;
            }
            for b in &basis {
                if !span.contains(&flatten(&a.mul(b))) {
                    return false;
                }
            }
        }
        true
    });
    checks.push(finish(
        cfg,
        t0,
        Check::counted(
            "ac3_quaternion_points_valid",
            "AC3: every rank-1 class with nonzero pairing yields a closed, twist- and \
             involution-stable 4-dimensional quaternion subalgebra with x^2 = h",
            quat_trials,
            failures,
        ),
    ));

    let t0 = Instant::now();
    let block_trials = (cfg.trials / 100).max(10);
    let failures = count_failures(cfg, B_BROWN_BLOCK, block_trials, |rng| {
        let e = sample_rank1(k, rng);
        block_space(&e).map(|s| s.dim()) == Ok(22)
    });
    checks.push(finish(
        cfg,
        t0,
        Check::counted(
            "ac3_block_space_dimension",
            "AC3: the descended block space of a rank-1 generator is 22-dimensional",
            block_trials,
            failures,
        ),
    ));

    let t0 = Instant::now();
    let mut runs = Vec::new();
    for i in 0..3u64 {
        let mut rng = trial_rng(cfg.seed, stream(B_BROWN_CLOSURE) + i);
        let e = sample_rank1(k, &mut rng);
        if let Ok(space) = block_space(&e) {
            let diag = closure_diagnostic(k, &space);
            runs.push(json!({
                "input_dim": diag.input_dim,
                "generated_dim": diag.generated_dim,
                "closed": diag.closed,
            }));
        }
    }
    let samples = runs.len() as u64;
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac3_block_closure_diagnostic",
            "AC3: product saturation of the block space is measured and reported, not asserted",
            Status::Recorded,
            samples,
            json!({ "runs": runs }),
        ),
    ));

    checks
}

// -- geometry suite --------------------------------------------------------------

struct GeneralPairOutcome {
    general: u64,
    point_branch: u64,
    isotropic_branch: u64,
    failures: u64,
}

fn general_pair_trial(k: QuadExt, rng: &mut ChaCha12Rng, out: &mut GeneralPairOutcome) {
    let l1 = sample_line(k, rng);
    let l2 = sample_line(k, rng);
    match crate::geometry::line_pair_position(&l1, &l2) {
        PairPosition::General => {}
        _ => return,
    }
    out.general += 1;
    let ok = (|| -> Result<bool, GeomError> {
        let w = l1.space().intersect(l2.space())?;
        if w.dim() != 1 {
            return Ok(false);
        }
        let (e, h) = meet_class(&l1, &l2)?;
        if !w.contains(&e.coords()) {
            return Ok(false);
        }
        match meet(&l1, &l2) {
            Ok(p) => {
                if h.is_zero() || !l1.incident(&p) || !l2.incident(&p) {
                    return Ok(false);
                }
                out.point_branch += 1;
            }
            Err(GeomError::IsotropicPoint) => {
                if !h.is_zero() {
                    return Ok(false);
                }
                out.isotropic_branch += 1;
            }
            Err(e) => return Err(e),
        }
        Ok(true)
    })();
    if ok != Ok(true) {
        out.failures += 1;
    }
}

pub fn suite_geometry(cfg: &SuiteConfig) -> Vec<Check> {
    let k = cfg.ext();
    let mut checks = Vec::new();

    // General-position line pairs: 1-dimensional intersection, at most one
    // common point, both pairing branches exercised.
    let t0 = Instant::now();
    let sweeps: Vec<GeneralPairOutcome> = map_indexed(cfg.mode, cfg.trials as usize, |i| {
        let mut rng = trial_rng(cfg.seed, stream(B_GEOM_GENERAL) + i as u64);
        let mut out =
            GeneralPairOutcome { general: 0, point_branch: 0, isotropic_branch: 0, failures: 0 };
        general_pair_trial(k, &mut rng, &mut out);
        out
    });
    let mut total =
        GeneralPairOutcome { general: 0, point_branch: 0, isotropic_branch: 0, failures: 0 };
    for s in sweeps {
        total.general += s.general;
        total.point_branch += s.point_branch;
        total.isotropic_branch += s.isotropic_branch;
        total.failures += s.failures;
    }
    // Top up sequentially until both branches have occurred often enough.
    let mut extra = 0u64;
    while (total.point_branch < 10 || total.isotropic_branch < 10) && extra < 40 * cfg.trials {
        let mut rng = trial_rng(cfg.seed, stream(B_GEOM_GENERAL) + cfg.trials + extra);
        general_pair_trial(k, &mut rng, &mut total);
        extra += 1;
    }
    let enough = total.general >= cfg.trials / 2
        && total.point_branch >= 10
        && total.isotropic_branch >= 10;
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac4_general_position_meet",
            "AC4: general line pairs intersect in a single class; the meet is a point exactly \
             when the class has nonzero pairing, and both branches occur",
            if total.failures == 0 && enough { Status::Pass } else { Status::Fail },
            total.general,
            json!({
                "general_pairs": total.general,
                "point_branch": total.point_branch,
                "isotropic_branch": total.isotropic_branch,
                "failures": total.failures,
            }),
        ),
    ));

    // Special-position pairs: 5-dimensional intersection enumerated
    // exhaustively.
    let t0 = Instant::now();
    let pairs = (cfg.trials / 50).max(20);
    let expected = expected_special_classes(cfg.p);
    if expected > ENUMERATION_CAP {
        checks.push(finish(
            cfg,
            t0,
            Check::new(
                "ac5_special_intersection_census",
                "AC5: special pairs meet in a 5-dimensional space whose classes split \
                 exhaustively by pairing",
                Status::Recorded,
                0,
                json!({
                    "reason": "class count exceeds the enumeration cap at this p",
                    "class_count": expected.to_string(),
                    "cap": ENUMERATION_CAP.to_string(),
                }),
            ),
        ));
    } else {
        let mut failures = 0u64;
        let mut census_pairs = 0u64;
        let mut iso_range = (u64::MAX, 0u64);
        let mut points_checked = 0u64;
        let mut class_count = 0u64;
        for i in 0..pairs {
            let mut rng = trial_rng(cfg.seed, stream(B_GEOM_SPECIAL) + i);
            let ok = (|| -> Result<bool, GeomError> {
                let (l1, l2) = special_line_pair(k, &mut rng)?;
                let census = common_points_special(&l1, &l2, CollectMode::Sample(4), cfg.mode)?;
                if census.intersection_dim != 5 {
                    return Ok(false);
                }
                class_count = census.class_count;
                if u128::from(census.class_count) != expected
                    || census.isotropic_classes + census.point_classes != census.class_count
                    || census.point_classes == 0
                    || census.spot_checks < 10
                {
                    return Ok(false);
                }
                iso_range.0 = iso_range.0.min(census.isotropic_classes);
                iso_range.1 = iso_range.1.max(census.isotropic_classes);
                for p in &census.points {
                    if !l1.incident(p) || !l2.incident(p) {
                        return Ok(false);
                    }
                    points_checked += 1;
                }
                Ok(true)
            })();
            census_pairs += 1;
            if ok != Ok(true) {
                failures += 1;
            }
        }
        checks.push(finish(
            cfg,
            t0,
            Check::new(
                "ac5_special_intersection_census",
                "AC5: special pairs meet in a 5-dimensional space; every class is rank 1 and \
                 on both lines, and the exhaustive pairing split covers all classes",
                if failures == 0 { Status::Pass } else { Status::Fail },
                census_pairs,
                json!({
                    "pairs": census_pairs,
                    "class_count": class_count,
                    "isotropic_min": iso_range.0,
                    "isotropic_max": iso_range.1,
                    "sampled_points_checked": points_checked,
                    "failures": failures,
                }),
            ),
        ));
    }

    // Line quadrics: rank 10, zero radical, Witt index 5, zero locus = rank-1
    // locus.
    let t0 = Instant::now();
    let lines = (cfg.trials / 20).max(50);
    let failures: u64 = map_indexed(cfg.mode, lines as usize, |i| {
        let mut rng = trial_rng(cfg.seed, stream(B_GEOM_QUADRIC) + i as u64);
        let ok = (|| -> Result<bool, GeomError> {
            let line = sample_line(k, &mut rng);
            let quad = line.quadric()?;
            if quad.form.rank() != 10 || quad.form.radical().dim() != 0 {
                return Ok(false);
            }
            let witt = quad.form.witt_decompose()?;
            if witt.index != 5 {
                return Ok(false);
            }
            // Adjoints of random elements of the line stay on the generator
            // line.
            let g = line.generator();
            for _ in 0..3 {
                let coeffs: Vec<Fq> = (0..10).map(|_| k.sample(&mut rng)).collect();
                let v = line.element_from_coeffs(&coeffs);
                let adj = v.adjoint();
                if !adj.is_zero() && scalar_multiple_of(&adj.coords(), &g.coords()).is_none() {
                    return Ok(false);
                }
            }
            // Zero locus <-> rank <= 1, exercised from both sides.
            let sampler = IsotropicSampler::new(&quad.form)?;
            for _ in 0..50 {
                let c = sampler.sample(k, &mut rng);
                if !quad.form.eval(&c).is_zero() {
                    return Ok(false);
                }
                if line.element_from_coeffs(&c).rank() > 1 {
                    return Ok(false);
                }
            }
            for _ in 0..50 {
                let c: Vec<Fq> = (0..10).map(|_| k.sample(&mut rng)).collect();
                let vanishes = quad.form.eval(&c).is_zero();
                let low_rank = line.element_from_coeffs(&c).rank() <= 1;
                if vanishes != low_rank {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        u64::from(ok != Ok(true))
    })
    .into_iter()
    .sum();
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac6_line_quadric_invariants",
            "AC6: each line carries a quadric of rank 10, zero radical, and Witt index 5 whose \
             zero locus is exactly the rank-at-most-1 locus",
            if failures == 0 { Status::Pass } else { Status::Fail },
            lines,
            json!({ "lines": lines, "samples_per_line": 100, "failures": failures }),
        ),
    ));

    // Chains: every pair of points is connected by two joins through an
    // intermediate point.
    let t0 = Instant::now();
    let chain_trials = (cfg.trials / 10).max(100);
    let budget = cfg.budget as usize;
    let outcomes: Vec<(u64, u64)> = map_indexed(cfg.mode, chain_trials as usize, |i| {
        let mut rng = trial_rng(cfg.seed, stream(B_GEOM_CHAIN) + i as u64);
        let from = sample_point(k, &mut rng);
        let to = sample_point(k, &mut rng);
        match chain(&from, &to, budget, &mut rng) {
            Ok(ch) => {
                let ok = ch.verify(&from, &to)
                    && ch.mid != from
                    && ch.mid != to
                    && (from == to || ch.first != ch.second);
                (u64::from(!ok), ch.attempts as u64)
            }
            Err(_) => (1, budget as u64),
        }
    });
    let failures: u64 = outcomes.iter().map(|o| o.0).sum();
    let max_attempts = outcomes.iter().map(|o| o.1).max().unwrap_or(0);
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac8_chain_construction",
            "AC8: random point pairs are joined by a two-line chain with all four incidences \
             valid and consecutive objects distinct, within budget",
            if failures == 0 { Status::Pass } else { Status::Fail },
            chain_trials,
            json!({ "pairs": chain_trials, "max_attempts": max_attempts, "failures": failures }),
        ),
    ));

    checks
}

/// Projective classes of a 5-dimensional space over the quadratic extension
/// of `F_p`.
pub fn expected_special_classes(p: u64) -> u128 {
    let q2 = u128::from(p) * u128::from(p);
    (q2.pow(5) - 1) / (q2 - 1)
}

// -- weyl suite ------------------------------------------------------------------

pub fn suite_weyl(cfg: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();

    let t0 = Instant::now();
    let w = WeylGroup::generate();
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac7_group_order",
            "AC7: the reflection closure of the 6 simple reflections has exactly 51840 elements",
            if w.order() == weyl::GROUP_ORDER { Status::Pass } else { Status::Fail },
            w.order() as u64,
            json!({ "order": w.order() }),
        ),
    ));

    let t0 = Instant::now();
    let pp = w.double_cosets(&weyl::J_DROP6, &weyl::J_DROP6);
    let pp_ok = pp.len() == 3
        && pp.iter().map(|c| c.size).sum::<usize>() == w.order()
        && pp.iter().all(|c| c.has_unique_minimum());
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac7_double_cosets_point_point",
            "AC7: the parabolic dropping node 6 has exactly 3 double cosets against itself, \
             each with a unique minimal element",
            if pp_ok { Status::Pass } else { Status::Fail },
            w.order() as u64,
            json!({
                "count": pp.len(),
                "min_lengths": pp.iter().map(|c| c.min_length).collect::<Vec<_>>(),
                "sizes": pp.iter().map(|c| c.size).collect::<Vec<_>>(),
            }),
        ),
    ));

    let t0 = Instant::now();
    let pl = w.double_cosets(&weyl::J_DROP6, &weyl::J_DROP1);
    let pl_ok = pl.len() == 3
        && pl.iter().map(|c| c.size).sum::<usize>() == w.order()
        && pl.iter().all(|c| c.has_unique_minimum());
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac7_double_cosets_point_line",
            "AC7: the parabolics dropping node 6 and node 1 have exactly 3 double cosets, \
             each with a unique minimal element",
            if pl_ok { Status::Pass } else { Status::Fail },
            w.order() as u64,
            json!({
                "count": pl.len(),
                "min_lengths": pl.iter().map(|c| c.min_length).collect::<Vec<_>>(),
                "sizes": pl.iter().map(|c| c.size).collect::<Vec<_>>(),
            }),
        ),
    ));

    let t0 = Instant::now();
    let poset = MinusculePoset::new();
    let rank_matches = poset.rank_polynomial() == w.poincare_quotient(&weyl::J_DROP6);
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac7_minuscule_diagram",
            "AC7: the minuscule weight diagram has 27 nodes and its rank generating function \
             equals the point-quotient Poincare polynomial",
            if poset.len() == 27 && rank_matches { Status::Pass } else { Status::Fail },
            poset.len() as u64,
            json!({ "nodes": poset.len(), "edges": poset.edges.len() }),
        ),
    ));

    let t0 = Instant::now();
    let cut6 = poset.component_sizes_without(5);
    let cut1 = poset.component_sizes_without(0);
    let cuts_ok = cut6.len() == 3
        && cut1.len() == 3
        && cut6.iter().sum::<usize>() == 27
        && cut1.iter().sum::<usize>() == 27;
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac7_diagram_cuts",
            "AC7: deleting the edges labeled 6 (resp. 1) splits the diagram into exactly 3 \
             components, matching the double-coset counts",
            if cuts_ok { Status::Pass } else { Status::Fail },
            27,
            json!({ "cut_node6": cut6, "cut_node1": cut1 }),
        ),
    ));

    let t0 = Instant::now();
    let strat = verify_stratification(&w);
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac7_stratification_pair_identity",
            "AC7: B(q)^2 = q^8 D(q) + q E(q) + B(q) holds coefficientwise for the parabolic \
             quotient Poincare polynomials",
            if strat.pair_identity_holds { Status::Pass } else { Status::Fail },
            1,
            json!({
                "point_quotient": strat.point_quotient.to_string(),
                "shifts": [8, 1, 0],
            }),
        ),
    ));
    checks.push(finish(
        cfg,
        t0,
        Check::new(
            "ac7_stratification_flag_identity",
            "AC7: B(q) C(q) = q^16 B(q) + q^5 E(q) + D(q) holds coefficientwise for the \
             parabolic quotient Poincare polynomials",
            if strat.flag_identity_holds { Status::Pass } else { Status::Fail },
            1,
            json!({
                "dual_quotient": strat.dual_quotient.to_string(),
                "shifts": [16, 5, 0],
            }),
        ),
    ));

    checks
}

// -- out-of-scope entries ---------------------------------------------------------

/// Claims adjacent to this engine that cannot be verified here; they are
/// listed so reports enumerate what was not tested, and they never pass.
pub fn scope_checks() -> Vec<Check> {
    vec![
        Check::not_applicable(
            "na_anisotropic_complement",
            "AC9: the complement of the open point locus has no rational points over the \
             relevant base fields",
            "over finite fields every quadratic form of rank at least 3 is isotropic, so the \
             anisotropic objects this claim concerns do not exist here",
        ),
        Check::not_applicable(
            "na_twisted_form_varieties",
            "AC9: the point and line sets are identified with specific twisted flag varieties \
             as varieties",
            "this engine verifies rational-point-level incidence only; no scheme structure is \
             represented",
        ),
        Check::not_applicable(
            "na_torus_commutation",
            "AC9: the rank-1 norm tori attached to two incident points commute at the group \
             level",
            "group-scheme structure is out of scope; incidence is the only shadow of this \
             statement represented here",
        ),
    ]
}

/// Runs the selected suite (or all of them) plus the fixed out-of-scope
/// entries.
pub fn run_verify(cfg: &SuiteConfig, suite: SuiteName) -> Vec<Check> {
    let mut checks = match suite {
        SuiteName::Octonion => suite_octonion(cfg),
        SuiteName::Albert => suite_albert(cfg),
        SuiteName::Brown => suite_brown(cfg),
        SuiteName::Geometry => suite_geometry(cfg),
        SuiteName::Weyl => suite_weyl(cfg),
        SuiteName::All => {
            let mut all = suite_octonion(cfg);
            all.extend(suite_albert(cfg));
            all.extend(suite_brown(cfg));
            all.extend(suite_geometry(cfg));
            all.extend(suite_weyl(cfg));
            all
        }
    };
    checks.extend(scope_checks());
    checks
}

fn report_config(cfg: &SuiteConfig, suite: &str) -> ReportConfig {
    ReportConfig {
        p: cfg.p,
        d: cfg.d,
        seed: cfg.seed,
        trials: cfg.trials,
        budget: cfg.budget,
        exec_mode: cfg.mode.effective().to_string(),
        suite: suite.to_string(),
    }
}

/// The full report for the `verify` command.
pub fn verify_report(cfg: &SuiteConfig, suite: SuiteName) -> Report {
    Report::new("verify", report_config(cfg, &suite.to_string()), run_verify(cfg, suite))
}

// -- chain command ---------------------------------------------------------------

/// How an endpoint of a chain is specified on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSpec {
    /// One of the three diagonal idempotent classes.
    Diagonal(usize),
    /// Seeded-random point.
    Random,
    /// Explicit coordinates: 54 integers, the (unit, root) parts of the 27
    /// extension-field coordinates.
    Coords(Vec<u64>),
}

pub fn parse_point_spec(s: &str) -> Result<PointSpec, ConfigError> {
    let t = s.trim();
    match t.to_ascii_lowercase().as_str() {
        "e1" => return Ok(PointSpec::Diagonal(0)),
        "e2" => return Ok(PointSpec::Diagonal(1)),
        "e3" => return Ok(PointSpec::Diagonal(2)),
        "random" => return Ok(PointSpec::Random),
        _ => {}
    }
    let parts: Result<Vec<u64>, _> = t.split(',').map(|x| x.trim().parse::<u64>()).collect();
    match parts {
        Ok(v) if v.len() == 54 => Ok(PointSpec::Coords(v)),
        Ok(v) => Err(ConfigError::BadPointSpec(format!(
            "expected 54 comma-separated coordinates, got {}",
            v.len()
        ))),
        Err(_) => Err(ConfigError::BadPointSpec(format!(
            "'{t}' is neither E1/E2/E3, 'random', nor a comma-separated coordinate list"
        ))),
    }
}

/// Turns a spec into a point; `salt` separates the random streams of the two
/// endpoints.
pub fn realize_point(
    cfg: &SuiteConfig,
    spec: &PointSpec,
    salt: u64,
) -> Result<Point, ConfigError> {
    let k = cfg.ext();
    match spec {
        PointSpec::Diagonal(i) => Point::new(&AlbertElement::diag_unit(k, *i))
            .map_err(|e| ConfigError::BadPointSpec(e.to_string())),
        PointSpec::Random => {
            let block = if salt == 0 { B_CHAIN_FROM } else { B_CHAIN_TO };
            let mut rng = trial_rng(cfg.seed, stream(block));
            Ok(sample_point(k, &mut rng))
        }
        PointSpec::Coords(v) => {
            let coords: Vec<Fq> = v.chunks(2).map(|ab| k.elem(ab[0] % cfg.p, ab[1] % cfg.p)).collect();
            Point::new(&AlbertElement::from_coords(&coords)).map_err(|e| {
                ConfigError::BadPointSpec(format!("coordinates do not define a point: {e}"))
            })
        }
    }
}

fn albert_coords_json(e: &AlbertElement<Fq>) -> serde_json::Value {
    serde_json::Value::Array(
        e.coords()
            .iter()
            .map(|c| {
                let (a, b) = c.parts();
                json!([a.val(), b.val()])
            })
            .collect(),
    )
}

/// The full report for the `chain` command: the five objects of the chain
/// with an incidence certificate per adjacent pair.
pub fn chain_report(
    cfg: &SuiteConfig,
    from_spec: &PointSpec,
    to_spec: &PointSpec,
) -> Result<Report, ConfigError> {
    let from = realize_point(cfg, from_spec, 0)?;
    let to = realize_point(cfg, to_spec, 1)?;
    let mut rng = trial_rng(cfg.seed, stream(B_CHAIN_RUN));
    let mut checks = Vec::new();
    let t0 = Instant::now();
    match chain(&from, &to, cfg.budget as usize, &mut rng) {
        Ok(ch) => {
            checks.push(finish(
                cfg,
                t0,
                Check::new(
                    "chain_constructed",
                    "AC8: a point-line-point-line-point chain connects the endpoints",
                    Status::Pass,
                    1,
                    json!({
                        "from": albert_coords_json(from.rep()),
                        "first_line": albert_coords_json(ch.first.generator()),
                        "mid": albert_coords_json(ch.mid.rep()),
                        "second_line": albert_coords_json(ch.second.generator()),
                        "to": albert_coords_json(to.rep()),
                        "attempts": ch.attempts,
                    }),
                ),
            ));
            let certs = [
                ("from_on_first", ch.first.incident(&from)),
                ("mid_on_first", ch.first.incident(&ch.mid)),
                ("mid_on_second", ch.second.incident(&ch.mid)),
                ("to_on_second", ch.second.incident(&to)),
            ];
            let all_incident = certs.iter().all(|(_, ok)| *ok);
            checks.push(Check::new(
                "chain_incidences",
                "AC8: all four adjacent incidences of the chain hold",
                if all_incident { Status::Pass } else { Status::Fail },
                4,
                json!(certs.iter().map(|(n, ok)| json!({ "name": n, "holds": ok })).collect::<Vec<_>>()),
            ));
            let distinct =
                ch.mid != from && ch.mid != to && (from == to || ch.first != ch.second);
            checks.push(Check::new(
                "chain_consecutive_distinct",
                "AC8: consecutive objects of the chain are distinct",
                if distinct { Status::Pass } else { Status::Fail },
                1,
                json!({
                    "mid_equals_endpoint": ch.mid == from || ch.mid == to,
                    "lines_equal": ch.first == ch.second,
                    "endpoints_coincident": from == to,
                }),
            ));
        }
        Err(e) => {
            checks.push(finish(
                cfg,
                t0,
                Check::new(
                    "chain_constructed",
                    "AC8: a point-line-point-line-point chain connects the endpoints",
                    Status::Fail,
                    1,
                    json!({ "error": e.to_string(), "budget": cfg.budget }),
                ),
            ));
        }
    }
    Ok(Report::new("chain", report_config(cfg, "chain"), checks))
}

// -- count command ---------------------------------------------------------------

/// What the `count` command enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountTarget {
    SpecialIntersection,
    LineQuadric,
}

impl CountTarget {
    pub fn parse(s: &str) -> Result<CountTarget, ConfigError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "special-intersection" => Ok(CountTarget::SpecialIntersection),
            "line-quadric" => Ok(CountTarget::LineQuadric),
            other => Err(ConfigError::UnknownCountTarget(other.to_string())),
        }
    }
}

/// The full report for the `count` command. A tripped enumeration guard
/// surfaces as `Err(GeomError::TooLarge)` so the process can exit with
/// status 2.
pub fn count_report(cfg: &SuiteConfig, what: CountTarget) -> Result<Report, GeomError> {
    let k = cfg.ext();
    let mut checks = Vec::new();
    match what {
        CountTarget::SpecialIntersection => {
            let expected = expected_special_classes(cfg.p);
            if expected > ENUMERATION_CAP {
                return Err(GeomError::TooLarge { size: expected, cap: ENUMERATION_CAP });
            }
            let t0 = Instant::now();
            let mut rng = trial_rng(cfg.seed, stream(B_COUNT_SPECIAL));
            match special_line_pair(k, &mut rng)
                .and_then(|(l1, l2)| common_points_special(&l1, &l2, CollectMode::CountOnly, cfg.mode))
            {
                Ok(census) => {
                    let total_ok = u128::from(census.class_count) == expected
                        && census.intersection_dim == 5;
                    checks.push(finish(
                        cfg,
                        t0,
                        Check::new(
                            "count_special_total",
                            "AC5: the intersection of a special pair is 5-dimensional with the \
                             full projective class count",
                            if total_ok { Status::Pass } else { Status::Fail },
                            census.class_count,
                            json!({
                                "intersection_dim": census.intersection_dim,
                                "total_classes": census.class_count,
                            }),
                        ),
                    ));
                    let split_ok =
                        census.isotropic_classes + census.point_classes == census.class_count;
                    checks.push(Check::new(
                        "count_special_split",
                        "AC5: every class has zero or nonzero pairing; the split is exhaustive",
                        if split_ok { Status::Pass } else { Status::Fail },
                        census.class_count,
                        json!({
                            "isotropic_classes": census.isotropic_classes,
                            "point_classes": census.point_classes,
                        }),
                    ));
                    checks.push(Check::new(
                        "count_special_spot_checks",
                        "AC5: deterministic spot checks reconcile the fast pairing census with \
                         direct evaluation",
                        if census.spot_checks >= 10 { Status::Pass } else { Status::Fail },
                        census.spot_checks as u64,
                        json!({ "spot_checks": census.spot_checks }),
                    ));
                }
                Err(GeomError::TooLarge { size, cap }) => {
                    return Err(GeomError::TooLarge { size, cap })
                }
                Err(e) => {
                    checks.push(finish(
                        cfg,
                        t0,
                        Check::new(
                            "count_special_total",
                            "AC5: the intersection of a special pair is 5-dimensional with the \
                             full projective class count",
                            Status::Fail,
                            0,
                            json!({ "error": e.to_string() }),
                        ),
                    ));
                }
            }
        }
        CountTarget::LineQuadric => {
            let t0 = Instant::now();
            let mut rng = trial_rng(cfg.seed, stream(B_COUNT_QUADRIC));
            let line = sample_line(k, &mut rng);
            match line.quadric().and_then(|q| Ok((q.form.rank(), q.form.radical().dim(), q.form.witt_decompose()?.index))) {
                Ok((rank, radical, index)) => {
                    checks.push(finish(
                        cfg,
                        t0,
                        Check::new(
                            "quadric_rank",
                            "AC6: the quadric of a line has rank 10",
                            if rank == 10 { Status::Pass } else { Status::Fail },
                            1,
                            json!({ "rank": rank }),
                        ),
                    ));
                    checks.push(Check::new(
                        "quadric_radical_dim",
                        "AC6: the quadric of a line has zero radical",
                        if radical == 0 { Status::Pass } else { Status::Fail },
                        1,
                        json!({ "radical_dim": radical }),
                    ));
                    checks.push(Check::new(
                        "quadric_witt_index",
                        "AC6: the quadric of a line has Witt index 5",
                        if index == 5 { Status::Pass } else { Status::Fail },
                        1,
                        json!({ "witt_index": index }),
                    ));
                }
                Err(e) => {
                    checks.push(finish(
                        cfg,
                        t0,
                        Check::new(
                            "quadric_rank",
                            "AC6: the quadric of a line has rank 10",
                            Status::Fail,
                            0,
                            json!({ "error": e.to_string() }),
                        ),
                    ));
                }
            }
        }
    }
    Ok(Report::new("count", report_config(cfg, "count"), checks))
}
