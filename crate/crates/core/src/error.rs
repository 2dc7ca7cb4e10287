//! Error type shared by every module in the crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across matrix construction, factorization,
/// sweep sampling, region queries, generators, and verification.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Shapes or partition sizes do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix handed to the Hermitian eigensolver deviates from its
    /// adjoint by more than the admission tolerance.
    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// An iterative eigenvalue computation ran out of its iteration budget.
    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },

    /// The block-diagonal base of the pencil is numerically singular, so the
    /// pencil eigenvalues are not defined through inversion.
    #[error("block-diagonal base is numerically singular (rcond {rcond:.3e})")]
    SingularBase { rcond: f64 },

    /// A single diagonal block is numerically singular.
    #[error("diagonal block {which} is numerically singular (rcond {rcond:.3e})")]
    SingularBlock { which: &'static str, rcond: f64 },

    /// A sampling routine was asked for fewer samples than it can work with.
    #[error("sample count {got} is below the minimum of {min}")]
    BadSampleCount { got: usize, min: usize },

    /// The sampled boundary arguments span a half-plane or more, so no
    /// sector with half-angle below a right angle contains them.
    #[error("boundary arguments spread over {spread:.6} rad; no admissible sector exists")]
    SpreadTooWide { spread: f64 },

    /// The origin lies strictly inside the sampled numerical range, so no
    /// sector anchored at the origin can contain it.
    #[error("origin lies strictly inside the sampled numerical range")]
    OriginInterior,

    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Chord endpoints do not average to the requested unit-circle midpoint.
    #[error("chord midpoint misses the unit circle target by {0:.3e}")]
    MidpointViolation(f64),

    /// Both chord endpoints share the same argument; the vertex geometry is
    /// degenerate and the product identity does not apply.
    #[error("degenerate chord: endpoint arguments coincide")]
    DegenerateTriangle,

    /// The requested boundary-distance parameter cannot be realized by any
    /// admissible construction.
    #[error("radius {r} is not reachable for phi={phi}, alpha={alpha}")]
    Unreachable { r: f64, phi: f64, alpha: f64 },

    /// A check was requested on a matrix outside the class it applies to.
    #[error("check not applicable: {0}")]
    NotApplicable(String),
}
