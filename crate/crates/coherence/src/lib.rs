//! Exact coherence checking for prevision assessments on conditional
//! events and their conjunctions and disjunctions, together with the Frank
//! t-norm family and the explicit solutions at the Fréchet–Hoeffding
//! bounds.
//!
//! The decision procedure runs entirely in exact rational arithmetic
//! ([`Rational`]). The t-norm evaluations and closed-form constructors are
//! generic over [`Scalar`], so they work equally with `f64`, `f32` or
//! `Rational`.

pub mod closed_form;
pub mod constituents;
pub mod engine;
pub mod events;
pub mod families;
pub mod frank;
pub mod geometry;
pub mod lp;
pub mod scalar;

pub use closed_form::{
    check_family7, extension_interval_family7, lambda_solution_tl, lambda_solution_tm, lukasiewicz_sufficient,
    special_case_same_consequent, tl_case, Family7Assessment, Family7Failure, Family7Verdict, LambdaVector,
    LukasiewiczVerdict, TlCase,
};
pub use constituents::{constituents_in_all_antecedents, enumerate_constituents, Class, Constituent, ConstituentSet};
pub use engine::{
    check_coherence, dutch_book_gains, extension_interval, extension_interval_by_bisection, find_dutch_book,
    value_table, CoherenceVerdict, DutchBook, EngineError, ExtensionInterval, TableRow, TraceLevel,
};
pub use events::{build_world_space, event, ConditionalEvent, Event, EventError, WorldSpace};
pub use frank::{
    frechet_bounds_conjunction, frechet_bounds_disjunction, solve_lambda, sum_rule_disjunction, tconorm, tnorm,
    FrankError, FrankParameter, LambdaFit, Uniqueness,
};
pub use geometry::{
    build_points, build_sigma, build_sigma_star, make_conjunction, make_disjunction, sigma_star_system, Assessment,
    CompoundPrevisionMap, ConditionalQuantity, GeometryError, PointSet, QuantityKind, Signature,
};
pub use lp::{
    maximize_component_sum, solve_feasibility, FeasibilityCertificate, LinearSystem, LpError, OptimizationResult,
};
pub use scalar::{parse_rational, ratio, Rational, RationalParseError, Scalar};

/// Λ vector over `f64`.
pub type LambdaVectorF64 = LambdaVector<f64>;
/// Λ vector over exact rationals.
pub type LambdaVectorExact = LambdaVector<Rational>;
/// Family-of-seven assessment over `f64`.
pub type Family7F64 = Family7Assessment<f64>;
/// Family-of-seven assessment over exact rationals.
pub type Family7Exact = Family7Assessment<Rational>;
/// Linear system over exact rationals, as produced by the geometry module.
pub type ExactSystem = LinearSystem<Rational>;
