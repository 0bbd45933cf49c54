//! Exact-rational simplicial cochain geometry: finite simplicial pairs,
//! boundary and coboundary calculus, isoperimetric constants for sup-norm
//! primitives and mass fillings computed by exact linear programming, the
//! duality between the two, and integer rounding of coboundary witnesses.

pub mod complex;
pub mod error;
pub mod format;
pub mod iso;
pub mod optimize;
pub mod round;
pub mod samples;

pub use complex::{
    boundary, coboundary, reduce_mod_a, relative_mass, Chain, Cochain, Rat, SimplicialPair,
};
pub use error::{Error, Result};
pub use format::{
    cochain_to_text, complex_to_text, parse_cochain, parse_complex, parse_rational,
};
pub use iso::{
    duality_check, duality_check_capped, iso_constant, iso_constant_capped, DualityReport,
    IsoperimetricResult, Side, DEFAULT_ENUMERATION_CAP,
};
pub use optimize::{min_linf_primitive, min_mass_filling, relative_coboundary};
pub use round::{guth_round, guth_round_with_primitive, nearest_integer, RoundingResult};
