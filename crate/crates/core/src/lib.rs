//! Matrix perspectives of operator convex functions, the quantum entropy
//! functionals built from them, and seeded Loewner-order verification of the
//! inequalities they satisfy.

// `!(x >= y)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atoms;
pub mod commuting;
pub mod encoding;
pub mod error;
pub mod functionals;
pub mod linalg;
pub mod perspective;
pub mod verify;

pub use atoms::{eval_atom, lookup_atom, ScalarAtom};
pub use commuting::{CommutingPair, MultiplicationPair};
pub use error::{Error, Result};
pub use functionals::{DensityMatrix, ProbabilityVector};
pub use linalg::{CMatrix, HermitianMatrix, LoewnerVerdict, SpectralDecomposition, C64};
