//! Dense complex Hermitian linear algebra and Wigner-Yanase-Dyson
//! skew-information quantities for finite-dimensional quantum states.
//!
//! The crate is `no_std` + `alloc`; all IO, serialization, and campaign
//! tooling live in the companion `skewtrace` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod eigen;
mod error;
pub mod ineq;
pub mod matrix;
pub mod rng;
pub mod skew;
pub mod state;

pub use eigen::SpectralDecomposition;
pub use error::CoreError;
pub use ineq::{InequalityCheck, InequalityId};
pub use matrix::{Complex64, ComplexMatrix};
pub use skew::SkewQuantities;
pub use state::{DensityMatrix, Observable};

/// Default absolute tolerance on inequality margins.
pub const DEFAULT_MARGIN_TOL: f64 = 1e-9;

/// Default relative tolerance for Hermiticity tests.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Eigenvalues of a state above `-PSD_CLAMP_TOL` are clamped to zero;
/// anything more negative is rejected.
pub const PSD_CLAMP_TOL: f64 = 1e-12;
