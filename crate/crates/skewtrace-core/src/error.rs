use core::fmt;

/// Errors raised by matrix construction, eigendecomposition, state
/// validation, and the skew-information quantities.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreError {
    /// Operands have different dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// Matrix entries contain NaN or infinity.
    NonFiniteEntry,
    /// Entry buffer does not match the declared dimension.
    BadShape { dim: usize, len: usize },
    /// Input fails the Hermiticity test; carries the relative deviation.
    NotHermitian { deviation: f64 },
    /// Jacobi sweeps did not reduce the off-diagonal norm below threshold.
    NoConvergence { off_norm: f64 },
    /// A state eigenvalue is more negative than the clamping tolerance.
    NotPsd { eigenvalue: f64 },
    /// Candidate state has (near-)zero trace and cannot be normalized.
    ZeroTrace,
    /// Spectral function undefined (NaN/Inf) at an eigenvalue.
    DomainError { eigenvalue: f64 },
    /// Requested rank outside `1..=dim`.
    InvalidRank { rank: usize, dim: usize },
    /// alpha outside `[0, 1]`.
    InvalidAlpha { alpha: f64 },
    /// Expectation value has an imaginary part beyond tolerance.
    NonRealExpectation { imag: f64 },
    /// A quantity that must be nonnegative came out below `-tol`;
    /// indicates an internal inconsistency, not rounding.
    NegativeQuantity { value: f64, tol: f64 },
    /// The two formulas for the same quantity disagree beyond tolerance.
    InconsistentFormulas { delta: f64 },
    /// scalar_F requires t > 0.
    NonPositiveArgument { value: f64 },
    /// Eigenvalue pair invalid (negative or both zero).
    InvalidEigenvaluePair { lambda_i: f64, lambda_j: f64 },
    /// Mixing weight outside [0, 1].
    InvalidWeight { weight: f64 },
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            CoreError::NonFiniteEntry => write!(f, "matrix entry is NaN or infinite"),
            CoreError::BadShape { dim, len } => {
                write!(f, "expected {dim}x{dim} = {} entries, got {len}", dim * dim)
            }
            CoreError::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (relative deviation {deviation:.3e})")
            }
            CoreError::NoConvergence { off_norm } => {
                write!(f, "Jacobi iteration did not converge (off-diagonal norm {off_norm:.3e})")
            }
            CoreError::NotPsd { eigenvalue } => {
                write!(f, "state is not positive semidefinite (eigenvalue {eigenvalue:.3e})")
            }
            CoreError::ZeroTrace => write!(f, "state has zero trace"),
            CoreError::DomainError { eigenvalue } => {
                write!(f, "spectral function undefined at eigenvalue {eigenvalue:.3e}")
            }
            CoreError::InvalidRank { rank, dim } => {
                write!(f, "rank {rank} outside 1..={dim}")
            }
            CoreError::InvalidAlpha { alpha } => write!(f, "alpha out of range: {alpha}"),
            CoreError::NonRealExpectation { imag } => {
                write!(f, "expectation value has imaginary part {imag:.3e}")
            }
            CoreError::NegativeQuantity { value, tol } => {
                write!(f, "nonnegative quantity came out {value:.3e} (tolerance -{tol:.0e})")
            }
            CoreError::InconsistentFormulas { delta } => {
                write!(f, "paired formulas disagree by {delta:.3e}")
            }
            CoreError::NonPositiveArgument { value } => {
                write!(f, "argument must be positive, got {value}")
            }
            CoreError::InvalidEigenvaluePair { lambda_i, lambda_j } => {
                write!(f, "invalid eigenvalue pair ({lambda_i}, {lambda_j})")
            }
            CoreError::InvalidWeight { weight } => write!(f, "weight out of range: {weight}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CoreError {}
