use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix does not have full rank")]
    RankDeficient,
    #[error("leading square block of the matrix is singular")]
    LeadingBlockSingular,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is already unimodular")]
    UnimodularInput,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("object is not full-dimensional")]
    NotFullDim,
    #[error("system has no integer solution")]
    Infeasible,
    #[error("polyhedron is empty")]
    Empty,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("generating function does not describe a polytope")]
    NonPolytope,
    #[error("evaluation point is a pole of the generating function")]
    PoleAt,
    #[error("quasi-polynomial evaluated to a non-integer")]
    NonInteger,
    #[error("exponent does not fit in a machine word")]
    ExponentTooLarge,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("enumeration exceeds {limit} candidate points")]
    TooLarge { limit: u64 },
}
