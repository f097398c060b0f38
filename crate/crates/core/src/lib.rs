//! Stratification of the variety of partial flags stabilized by a
//! nilpotent operator.
//!
//! Given a Jordan type and a dimension vector, the stable flags split into
//! strata indexed by their intersection dimensions with the kernel
//! filtration. Each stratum fibers over a variety of doubly indexed flags,
//! which in turn is an iterated bundle of Grassmannians, so its point count
//! over F_q is a product of Gaussian binomials times a power of q.
//!
//! The crate computes the stratum invariants exactly (integer/polynomial
//! arithmetic throughout) and verifies them against exhaustive enumeration
//! over small prime fields; see [`verify`] for the harness and
//! [`verify::default_suite`] for the standard instance set.

// indexed loops read better than iterator chains in the dense matrix code
#![allow(clippy::needless_range_loop)]

pub mod doubly;
pub mod enumerate;
pub mod error;
pub mod fiber;
pub mod field;
pub mod flags;
pub mod jordan;
pub mod matrix;
pub mod nilpotent;
pub mod qpoly;
pub mod strata;
pub mod subspace;
pub mod verify;

pub use doubly::{
    base_point, enumerate_doubly_flags, phi, psi, schubert_membership, DoublyIndexedFlag,
};
pub use enumerate::{enumerate_subspaces, enumerate_superspaces};
pub use error::{Error, Result};
pub use fiber::fiber_dimension;
pub use field::FieldSpec;
pub use flags::{
    enumerate_partial_flags, homogenize, is_homogeneous, is_x_stable, orbit_signature, PartialFlag,
};
pub use jordan::JordanType;
pub use matrix::MatrixGF;
pub use nilpotent::{build_nilpotent, nilpotent_from_parts, NilpotentOperator};
pub use qpoly::{gaussian_binomial, QPolynomial};
pub use strata::{
    alpha_from_kappa, delta_epsilon, enumerate_alpha, kappa_from_alpha, stratum_invariants,
    AlphaMatrix, KappaMatrix, StratumInvariants,
};
pub use subspace::Subspace;
pub use verify::{
    brute_force_stratify, run_instance, CheckLevel, Instance, StratificationReport, DEFAULT_BUDGET,
};
