//! Exact symbolic calculus in finitely generated free graded-commutative
//! differential algebras: cylinder homotopies and their integration
//! operators, obstruction cocycles for extensions, Sullivan-style homotopy
//! periods with Lipschitz-exponent ledgers, positive-weight nullhomotopies,
//! and minimal-model construction.
//!
//! All algebraic computation is over arbitrary-precision rationals; the only
//! floating-point code is the recurrence profiler in [`recurrence`].

pub mod algebra;
pub mod cylinder;
pub mod error;
pub mod ledger;
pub mod models;
pub mod morphism;
pub mod obstruction;
pub mod periods;
pub mod recurrence;
pub mod weights;

pub use algebra::{Element, FreeCdga, GenId, Generator, Monomial, Rat, Signature};
pub use cylinder::{
    cyl_differentiate, diagonal_restrict, integrate_0_1, integrate_0_t, square_differentiate,
    square_integrate_0_s, CylinderElement, SquareElement, SquareKey,
};
pub use error::{Error, Result};
pub use sullivan_lp::matrix as linalg;
pub use ledger::{
    dilatation_exponent, formal_length, formal_length_profile, homotopy_dilatation_exponent,
    WeightLedger,
};
pub use models::{
    build_algebra, catalog, catalog_names, hirsch_extend, isomorphic_renaming, minimal_model_of,
    model_dimension, HirschExtension,
};
pub use morphism::{validate_homotopy, DerivationClass, Homotopy, Morphism};
pub use obstruction::{
    concatenate, cone_cocycle_holds, extend_homotopy, extend_with_witness,
    extension_obstruction, homotopy_step_obstruction, push_cylinder,
    relative_homotopy_obstruction, restrict_prefix, ConeCochain, ExtensionProblem,
};
pub use periods::{
    adjoin_antiderivative, coefficient_weights, cohomologous_check, full_nullhomotopy,
    homotopy_periods, homotopy_periods_weighted, positive_weight_nullhomotopy, pullback_setup,
    pullback_setup_weighted, reduce_weight, Period, PeriodsRun, PositiveWeightRun, Reduction,
};
pub use recurrence::{
    crossing_point, gamma_bound, weird_recurrence, RecurrenceParams, RecurrenceReport,
};
pub use weights::{
    apply_grading_automorphism, detect_positive_weights, hurewicz_image,
    predict_distortion_exponent, weight_filtration, GradingAutomorphism, ScaleFactor,
    WeightFiltration, WeightGrading,
};
