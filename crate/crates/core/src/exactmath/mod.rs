//! Exact arithmetic: surds, coordinate polynomials, exponential sums and
//! box integrals.

pub mod expsum;
pub mod integrate;
pub mod poly;
pub mod surd;

pub use expsum::{derive, pointwise_sesquilinear, EnergySymbol, ExpSum, Phase, SurdPolynomial, Wavefunction};
pub use integrate::{box_integrate, BoxIntegral};
pub use poly::{monomials_up_to, total_degree, CoordPolynomial, Exponent, Polynomial};
pub use surd::SurdNumber;
