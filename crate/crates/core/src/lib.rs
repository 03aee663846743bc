//! Exact constants for the ℓ1–ℓ2 norm inequality.
//!
//! For any nonzero `x ∈ 𝔽ⁿ` (real or complex) `‖x‖₁ = (1 − c_x/2)√n‖x‖₂`
//! where `√c_x` is the distance from `x/‖x‖₂` to the nearest constant-modulus
//! vector. This crate computes that constant and its relatives:
//!
//! * [`tightness`]: `c_x`, the nearest constant-modulus vector, and the `√s` test.
//! * [`subspace`]: orthonormal bases, projectors, nearest unit vectors of a subspace.
//! * [`subspace_bound`]: the sharp constant for all unit vectors of a subspace,
//!   by exhaustive sign search or alternating ascent.
//! * [`coordinate`]: detection of coordinate subspaces with explicit violators.
//! * [`function_space`]: the peakiness `‖f − 1‖₂² = 2 − 2‖f‖₁` of step functions.
//!
//! The sign search and restart loops run on rayon when the `parallel` feature
//! is enabled (the default); see [`Execution`].

pub mod coordinate;
pub mod error;
pub mod field;
pub mod function_space;
pub mod par;
pub mod sample;
pub mod subspace;
pub mod subspace_bound;
pub mod tightness;

pub use coordinate::{
    greedy_phase_witness, is_coordinate_subspace, probe_sqrt_dim_bound, BoundProbe,
    CoordinateDecision, GreedyWitness, Verdict,
};
pub use error::{Error, ErrorKind, Result};
pub use field::{Field, Matrix, Scalar, Vector};
pub use function_space::{parallelogram_check, peakiness, vector_to_step, Exponent, StepFunction};
pub use par::Execution;
pub use subspace::{nearest_unit_in_subspace, Subspace};
pub use subspace_bound::{
    alternating_ascent, subspace_constant, subspace_constant_exact, subspace_constant_heuristic,
    unit_vector_l1_bound, SearchMethod, SubspaceBoundReport, EXACT_SEARCH_CUTOFF,
};
pub use tightness::{
    analyze, nearest_constant_modulus, satisfies_sqrt_s_bound, tightness_constant,
    ConstantModulusVector, TightnessReport,
};
