//! Pattern recognition over classical and quantum probabilistic models.
//!
//! Classes are represented by states of a probabilistic model: probability
//! vectors over a finite alphabet for the classical (simplex) backend, and
//! density operators for the quantum backend. The crate provides
//!
//! - dense complex linear algebra ([`matrix`], [`spectral`]),
//! - quantum states, effects, channels and metrics ([`quantum`]),
//! - Boolean and projection event lattices with generalized states ([`lattice`]),
//! - the classification engine ([`recognition`]),
//! - learning processes and state tomography ([`learning`], [`tomography`]),
//! - Deutsch-Jozsa and period finding cast as recognition problems ([`algorithms`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the `nkpr` crate.

#![no_std]
// `!(x >= lo)` guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algorithms;
pub mod error;
pub mod lattice;
pub mod learning;
mod math;
pub mod matrix;
pub mod quantum;
pub mod random;
pub mod recognition;
pub mod spectral;
pub mod tomography;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use spectral::HermitianSpectrum;
