use thiserror::Error;

/// Errors raised by the library. Verification failures that are part of a
/// normal report (a failed condition, a violated bound) are not errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),

    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),

    #[error("simplex `{id}`: face `{face}` has dimension {found}, expected {expected}")]
    FaceDimension {
        id: String,
        face: String,
        found: usize,
        expected: usize,
    },

    #[error("simplex `{id}`: face identity fails for faces {i} < {j}")]
    FaceIdentity { id: String, i: usize, j: usize },

    #[error("invalid formal simplex: {0}")]
    InvalidSimplex(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("boundary of a 0-chain is undefined")]
    BoundaryOfPoint,

    #[error("stratification is not total: simplex `{0}` has no stratum")]
    Unassigned(String),

    #[error("unknown stratum `{0}`")]
    UnknownStratum(String),

    #[error("limit digraph has a directed cycle through strata {0:?}")]
    CyclicStrata(Vec<String>),

    #[error("poset relation is not antisymmetric: `{0}` and `{1}`")]
    NotAntisymmetric(String, String),

    #[error("unknown poset element `{0}`")]
    UnknownElement(String),

    #[error("element `{0}` has no codimension tag")]
    MissingCodim(String),

    #[error("chain is not a cycle: boundary term on `{0}` is not cancelled")]
    NotACycle(String),

    #[error("chain term on `{0}` is not a native simplex of the complex")]
    NotSimplicial(String),

    #[error("not a subcomplex: `{0}` is a face of a member but not a member")]
    NotSubcomplex(String),

    #[error("boundary of the relative cycle leaves the subcomplex at `{0}`")]
    BoundaryOutsideSubcomplex(String),

    #[error("relative class mismatch: {0}")]
    ClassMismatch(String),

    #[error(
        "strata meeting the subcomplex admit a totally ordered chain of {found} strata; at most {allowed} allowed"
    )]
    ChainBound { found: usize, allowed: usize },

    #[error("chain fails the stratification conditions: {0}")]
    ConditionsFailed(String),

    #[error("invalid flow graph: {0}")]
    InvalidFlow(String),

    #[error("inconsistent disk poset: {0}")]
    InconsistentPoset(String),

    #[error("unknown manifold specification: {0}")]
    UnknownManifold(String),

    #[error("corner dimension {0} outside the supported range 1..=5")]
    CornerDimension(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
