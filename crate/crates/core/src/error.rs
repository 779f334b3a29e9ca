use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),

    #[error("negative exponent {0} is not allowed here")]
    NegativeExponent(i64),

    /// The two forms share a common factor, so no Nullstellensatz certificate exists.
    #[error("polynomials are not coprime (resultant vanishes identically)")]
    NotCoprime,

    /// A claim that must hold for valid inputs failed; either a bug or a violated hypothesis.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("root iteration did not reach tolerance {tol:e} (best radius {best_radius:e})")]
    RootNonConvergence { tol: f64, best_radius: f64 },

    #[error("divisor point of modulus {modulus} lies on the circle |z| = {radius}; perturb the grid")]
    CircleCollision { radius: f64, modulus: f64 },

    #[error("quadrature did not converge: best estimate {estimate} (last change {change:e})")]
    QuadratureNonConvergence { estimate: f64, change: f64 },

    #[error("symbol `{0}` has no derivative in the differential ring")]
    NotDifferentiable(String),

    #[error("curves {0} and {1} share a common component")]
    NonProperIntersection(usize, usize),

    #[error("elimination collapsed: {0}")]
    EliminationCollapse(String),

    #[error("iteration cap reached: {0}")]
    IterationCap(String),

    #[error("zero finder failed: {0}")]
    ZeroFinder(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
