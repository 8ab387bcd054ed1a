use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KdpError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation requires spin {required}, representation has spin {found}")]
    WrongSpin { required: u8, found: u8 },
    #[error("unsupported spin {0}; only 0 and 1 have nontrivial representations")]
    UnsupportedSpin(u8),
    #[error("field strength matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("potential violates the free Maxwell equations: ∂_μF^μν ≠ 0 for ν = {nu}")]
    FreeMaxwellViolation { nu: usize },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("reduced-operator form {form} is not available for spin {spin}")]
    InvalidForm { form: String, spin: u8 },
    #[error("fourth-order reduction requires A_0 = 0")]
    NonZeroScalarPotential,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("eigen-solver did not converge: {0}")]
    NonConvergence(String),
    #[error("representation construction failed: {0}")]
    Construction(String),
    #[error("spectral routes disagree: {0}")]
    RouteDisagreement(String),
}

pub type Result<T> = std::result::Result<T, KdpError>;
