//! Distances and quasidistances between states of a single bosonic mode.

// `!(x >= 0.0)` style checks are there to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_forms;
pub mod distances;
pub mod error;
pub mod figures;
pub mod fock_core;
pub mod format;
pub mod phase_space;
pub mod quadrature;
pub mod states;
pub mod tomography;

pub use error::{Error, ErrorClass, Result};
