//! Exact reversibility theory for `SL(n, ℍ)` and `PSL(n, ℍ)`.
//!
//! Given the Jordan data of a quaternionic matrix, the crate decides whether
//! it is reversible (conjugate to its inverse), strongly reversible
//! (conjugate to its inverse by an involution) or conjugate to minus its
//! inverse, and builds explicit conjugating matrices that can be checked with
//! zero tolerance over the rationals.
//!
//! Module layout:
//!
//! - [`scalar`]: rationals, Gaussian rationals, quaternions.
//! - [`matrix`]: dense matrices, the complex adjoint `Φ`, quaternionic determinant.
//! - [`partition`]: partitions, conjugate partitions, Weyr structures.
//! - [`canonical`]: Jordan specs, Jordan and Weyr matrices, Weyr centralizers.
//! - [`classify`]: the reversibility criteria.
//! - [`reversers`]: explicit reversing matrices and certificates.
//! - [`decompose`]: factorizations into (skew-)involutions.
//! - [`numeric`]: floating-point recovery of Jordan data.
//! - [`io`]: JSON wire formats.

pub mod canonical;
pub mod classify;
pub mod decompose;
pub mod error;
pub mod io;
pub mod matrix;
pub mod numeric;
pub mod partition;
pub mod reversers;
pub mod scalar;

pub use canonical::{JordanBlock, JordanSpec};
pub use classify::Classification;
pub use error::{Error, Result};
pub use matrix::{CMatrix, Matrix, QMatrix};
pub use partition::{PartitionData, WeyrStructure};
pub use reversers::{Certificate, Flavor, Target};
pub use scalar::{GaussianRational, Quaternion, Rational};
