//! Spectral-singularity and coherent-perfect-absorption loci for a complex
//! rectangular barrier under the fractional Schrödinger equation.
//!
//! The crate is split into layers:
//!
//! * [`complex_kernel`]: principal powers, polar form, bracketing and Brent refinement.
//! * [`medium`]: unit systems, the Lévy index and the fractional wavenumbers.
//! * [`scattering`]: the transfer matrix and scattering coefficients.
//! * [`locus`]: closed-form locus kernels in the `(rho, sigma)` plane.
//! * [`solver`]: curve tracing, ray intersections and the physical mapping.

// `!(a < b)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod complex_kernel;
pub mod error;
pub mod locus;
pub mod medium;
pub mod scattering;
pub mod solver;

pub use error::{Error, Result};
pub use locus::{Branch, LocusKind};
pub use medium::{BarrierSpec, LevyIndex, UnitMode, UnitSystem};
pub use num_complex::Complex64;
pub use scattering::{transfer_matrix, ScatteringOutcome, TransferMatrix};
pub use solver::{CurveTrace, LocusPoint, PhysicalPoint, Tolerances, TraceSettings};
