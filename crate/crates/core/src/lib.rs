//! Exact verification toolkit and Landau-level solver for the
//! Kemmer-Duffin-Petiau equation with minimal electromagnetic coupling.

pub mod algebra;
pub mod currents;
pub mod error;
pub mod exactmath;
pub mod fields;
pub mod matrix;
pub mod operators;
pub mod reduction;
pub mod scalar;
pub mod spectra;
pub mod suite;

pub use error::{KdpError, Result};
pub use exactmath::{CoordPolynomial, ExpSum, SurdNumber};
pub use matrix::Matrix;
pub use scalar::{GaussianRational, Rational};

/// Exact matrices used by the algebra and operator modules.
pub type ExactMatrix = Matrix<GaussianRational>;
/// Floating-point complex matrices for diagnostics.
pub type ComplexMatrix = Matrix<num_complex::Complex<f64>>;
