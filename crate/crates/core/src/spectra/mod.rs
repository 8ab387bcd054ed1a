//! Free plane-wave solutions and Landau-level spectra.

mod free;
mod grid;
mod landau;
mod oracle;
mod residuals;

pub use free::{momentum_matrix, solve_at_frequency, solve_free, FreeSolution, Frequency};
pub use grid::{depends_on_x_only, discretize, Grid, GridContext, GridFunction};
pub use oracle::{gauge_levels, oscillator_levels};
pub use landau::*;
pub use residuals::{check_residuals_spin0, check_residuals_spin1, exact_residual_failures, residuals_spin0, residuals_spin1, Residual,
    ResidualReport,};
