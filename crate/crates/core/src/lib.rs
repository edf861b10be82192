//! Tsallis-entropy correlation measures for two-qubit states.
//!
//! The crate computes two generalized quantum discords built from Tsallis
//! entropy: `D_q`, which uses q-expectation (escort-weighted) conditional
//! entropies and the normalized mutual entropy, and `D~_q`, which uses
//! ordinary expectations and the additive mutual entropy. Classical
//! correlations are found by optimizing over projective measurements on
//! qubit B; analytic results for Werner, isotropic and circulant states are
//! provided as independent oracles.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// negated comparisons below are how NaN inputs get rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod classical;
pub mod closed_form;
mod error;
pub mod linalg;
pub mod measurement;
pub mod optimize;
pub mod quantum;

pub use classical::{JointDist, ProbDist, Rank};
pub use closed_form::{CirculantParams, IsotropicParam, WernerParam};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, Spectrum, Subsystem};
pub use measurement::{DiscordResult, DiscordVariant, ProjectiveMeasurement};
pub use num_complex::Complex64;
pub use optimize::OptimizerConfig;
