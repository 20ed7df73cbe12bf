//! Exact-arithmetic toolkit for the local analysis of polynomial map-germs:
//! Jacobi ideals and their principality, frontality/cofrontality verdicts,
//! kernel fields, local-algebra dimensions, right symmetry groups, and
//! mapping-torus cofrontals with fiber censuses and numeric first-return maps.
//!
//! All symbolic computation is over the rationals, so every ideal-membership
//! and identity test is decidable and exact; the numeric subsystems (leaf
//! tracing, planar root finding) are explicitly tolerance-based and always
//! cross-checked against exact data where the design allows it.

pub mod germ;
pub mod local_algebra;
pub mod poly;
pub mod rational;
pub mod symmetry;
pub mod torus;

pub use germ::{
    classify_germ, index_sets, integrability_sample_check, jacobi_minors, kernel_cofactor_field,
    pluecker_section, principality_report, reduce_adapted, GermError, IndexSet,
    IntegrabilityReport, JacobiReport, KernelField, MapGerm, Verdict, VerdictKind,
};
pub use local_algebra::{
    fiber_count_bound, k_finiteness, quotient_dimension_profile, Finiteness, FinitenessReport,
    LocalAlgebraError,
};
pub use poly::{
    default_variable_names, exact_div, gcd, gcd_many, normalize, parse_polynomial, Monomial,
    ParseError, PolyError, PolyMatrix, Polynomial,
};
pub use rational::{parse_rational, rational, rational_frac, render_rational, Rational};
pub use symmetry::{
    catalog_families, check_right_symmetry, conjugate_symmetry, diffeo_order, symmetry_catalog,
    CatalogEntry, DiffeoOrder, Equivalence, GermDiffeo, SymmetryCertificate, SymmetryError,
};
pub use torus::{
    assemble, census_vs_construction, evaluate_point, fiber_census, mapping_torus_atlas,
    numeric_return_map, ChartedManifold, FiberCensus, MappingTorusCofrontal, PieceSpec, RatBox,
    RatInterval, TorusError, TorusPiece, Transversal,
};
