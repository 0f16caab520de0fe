use thiserror::Error;

/// Errors raised by the geometry, measurement and solver routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside the domain of the requested operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// U(s) vanishes, so quantities that divide by U are undefined.
    #[error("degenerate axis point at s = {s}")]
    DegenerateAxis { s: f64 },

    /// Adaptive quadrature hit its depth limit before reaching the tolerance.
    #[error("quadrature did not converge on [{lo}, {hi}] (estimated error {error:e})")]
    QuadratureNonConvergence { lo: f64, hi: f64, error: f64 },

    /// The parameter handed to a tangency routine is not a vertical tangency.
    #[error("s = {s} is not a vertical tangency (residual {residual:e})")]
    NotATangency { s: f64, residual: f64 },

    /// Consecutive contour arcs do not share endpoints.
    #[error("contour is not closed: gap {gap:e} after arc {arc}")]
    OpenContour { arc: usize, gap: f64 },

    /// The contour encloses a negative volume, i.e. it runs clockwise.
    #[error("contour is clockwise (signed volume {volume:e})")]
    Orientation { volume: f64 },

    /// Finite differences at h and h/2 disagree by more than the tolerance.
    #[error("finite-difference step {h:e} too large: estimates differ by {gap:e}")]
    StepTooLarge { h: f64, gap: f64 },

    /// No enumerated family reaches the requested volume.
    #[error("no candidate region of volume {volume}")]
    NoCandidate { volume: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
