//! Command-line front end for two-qubit Tsallis q-discords: single
//! evaluations, CSV sweeps, figure data and self-verification.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod figures;
pub mod format;
pub mod model;
pub mod state;
pub mod sweep;
pub mod verify;

pub use error::{CliError, Result};
