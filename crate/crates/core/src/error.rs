//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by norm computations, bound evaluations and searches.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Root finding was requested for a degree-zero polynomial.
    #[error("degree-zero polynomial has no roots")]
    DegreeZero,
    /// The simultaneous root iteration and the companion-matrix fallback
    /// both failed to reach the residual tolerance.
    #[error("root finder did not converge after {sweeps} sweeps (residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    /// A grid with fewer than one node was requested.
    #[error("grid size must be at least 1, got {0}")]
    InvalidGrid(usize),
    /// The polynomial is identically zero.
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    /// Every grid node evaluates to zero, so the norm ratio is undefined.
    #[error("all grid nodes evaluate to zero")]
    GridAnnihilation,
    /// A parameter is outside the admissible range of the operation.
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    /// The grid size is not a multiple of the degree, so no closed-form
    /// supremum is available.
    #[error("grid size {n_nodes} is not a multiple of degree {degree}")]
    NotMultiple { degree: usize, n_nodes: usize },
    /// The constant term vanishes, so the slit-map construction does not
    /// apply.
    #[error("constant term is zero")]
    ZeroConstantTerm,
    /// |P| is constant on the circle, so the slit degenerates to a point.
    #[error("|P| is constant on the unit circle")]
    ConstantModulus,
    /// The slit map inverse has a pole at zero.
    #[error("slit map inverse has a pole at zero")]
    PoleAtZero,
    /// The argument lies on the slit and no side was indicated.
    #[error("argument lies on the slit; a side indicator is required")]
    OnSlit,
    /// The point is outside the domain where the composed map is defined.
    #[error("point is outside the domain of the composed map")]
    OutsideDomain,
    /// The angle is excluded: |P| is too close to one of its extremal
    /// values there and the boundary derivative formula degenerates.
    #[error("angle is excluded: |P| too close to an extremal value")]
    ExcludedAngle,
    /// Quadrature cannot be set up because the profile is degenerate.
    #[error("quadrature endpoint degenerate: |P| is constant on the circle")]
    DegenerateEndpoint,
    /// Every search restart collapsed to an invalid candidate.
    #[error("every search restart collapsed to an invalid candidate")]
    AllRestartsFailed,
    /// Polynomial JSON could not be parsed or validated.
    #[error("invalid polynomial JSON: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
