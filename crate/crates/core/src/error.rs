use thiserror::Error;

/// Errors surfaced by the exact geometry engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix entries must be integers for this operation")]
    NonIntegerEntries,

    #[error("input vectors must be linearly independent")]
    NotIndependent,

    #[error("lattice must be full rank for this operation")]
    NotFullRank,

    #[error("vector must be non-zero")]
    ZeroVector,

    #[error("vector does not lie in the lattice")]
    NotInLattice,

    #[error("expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("body must be a polytope for this operation")]
    NotPolytope,

    #[error("body is empty")]
    EmptyBody,

    #[error("origin must be an interior point of the body")]
    OriginNotInterior,

    #[error("body must be origin symmetric")]
    NotSymmetric,

    #[error("body must be full dimensional")]
    NotFullDimensional,

    #[error("dimension {dim} exceeds the conversion cap {cap}; raise the cap to override")]
    DimensionCap { dim: usize, cap: usize },

    #[error("constructed basis violates the gauge bound (internal error): {0}")]
    BoundViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}
