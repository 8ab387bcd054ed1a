//! Differential operators acting on multi-component polynomial wavefunctions,
//! and exact sweeps of the operator identities.

mod basis;
mod diff;
mod kdp;
mod verify;

pub use basis::{BasisElement, TestBasis};
pub use diff::{apply_matrix, sum, DiffOperator, PolyMatrix, Wave, WaveComponent};
pub use kdp::OperatorSet;
pub use verify::*;
