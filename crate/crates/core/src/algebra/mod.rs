//! Duffin-Kemmer matrix representations and exact matrix identities.

pub mod identities;
pub mod report;
pub mod representation;

pub use identities::*;
pub use report::{matrix_residual, Counterexample, IdentityReport};
pub use representation::{eps3, eps4, metric, t_matrix, Representation, Sector};
