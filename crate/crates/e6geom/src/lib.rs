//! Exact-arithmetic engine for a family of exceptional algebraic structures
//! over small finite fields, together with the incidence geometry they carry
//! and its Weyl-group combinatorial shadow.
//!
//! The layers, bottom to top:
//!
//! - [`field`]: `F_p` and the quadratic extension `K = F_p(r)`, `r^2 = d`,
//!   with Galois conjugation. All arithmetic is exact.
//! - [`linalg`]: matrices, canonical row-echelon subspaces, kernels,
//!   intersections, and Witt decomposition of quadratic forms.
//! - [`octonion`]: split octonions in the vector-matrix (Zorn) model.
//! - [`albert`]: the 27-dimensional exceptional Jordan algebra of 3x3
//!   Hermitian octonion matrices — cubic norm, trace form, adjoint, Freudenthal
//!   cross product, rank stratification.
//! - [`brown`]: the 56-dimensional structurable algebra built from the Albert
//!   algebra and `K x K`, its involution, a Galois twist, quaternionic point
//!   structures, and descent to the fixed field.
//! - [`geometry`]: points and lines of the resulting incidence geometry —
//!   joins, meets, position classification, quadrics on lines, exhaustive
//!   intersection enumeration, and chain construction between points.
//! - [`weyl`]: the E6 root system and Weyl group — double cosets, the
//!   27-node minuscule weight diagram, and Poincare-polynomial identities
//!   mirroring the geometric stratifications.
//! - [`report`] / [`suites`] / [`cli`]: deterministic verification suites and
//!   the command-line surface that runs them and emits JSON reports.
//!
//! Heavy loops (projective enumerations, trial batches) run through
//! [`par`], which fans work out with rayon when the default `parallel`
//! feature is enabled and degrades to sequential execution otherwise.

pub mod albert;
pub mod brown;
pub mod cli;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod octonion;
pub mod par;
pub mod report;
pub mod suites;
pub mod weyl;

pub use albert::{AlbertElement, AlbertError, ALBERT_DIM};
pub use brown::{BrownElement, BrownError, ClosureDiagnostic, QuaternionPoint, BROWN_DIM};
pub use geometry::{
    chain, common_points_special, join, meet, meet_class, points_on_line, special_line_pair,
    Chain, CollectMode, GeomError, Line, PairPosition, Point, PointLinePosition,
    SpecialIntersection,
};
pub use field::{Field, FieldElem, FieldError, Fp, Fq, PrimeField, QuadExt};
pub use linalg::{LinalgError, Matrix, QuadraticForm, Subspace, WittDecomposition};
pub use octonion::{Octonion, OCT_DIM};
pub use par::ExecMode;
pub use report::{Check, Report, ReportConfig, Status};
pub use suites::{
    chain_report, count_report, parse_point_spec, realize_point, run_verify, verify_report,
    ConfigError, CountTarget, PointSpec, SuiteConfig, SuiteName,
};
pub use weyl::{
    verify_stratification, DoubleCoset, IntPolynomial, MinusculePoset, RootSystem,
    StratificationCheck, WeylGroup,
};
