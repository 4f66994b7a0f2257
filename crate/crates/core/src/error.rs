use thiserror::Error;

use crate::witnesses::Rejection;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the workbench.
///
/// Variants are split into two families: input problems (bad values, bad
/// syntax) and domain outcomes (a point cannot be separated, a search came
/// up empty). [`Error::is_usage`] tells them apart for callers that need to
/// map errors onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("index {index} out of range for a set with {len} elements")]
    OutOfRange { index: u64, len: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),
    #[error("inconsistent neighborhood: a set is required both in and out")]
    InconsistentNeighborhood,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not separable: {0}")]
    NotSeparable(String),
    #[error("search bound {bound} exhausted without a witness (inconclusive)")]
    SearchBoundExceeded { bound: u64 },
    #[error("no topology in neighborhood: {0}")]
    NoTopologyInNeighborhood(String),
    #[error("no function in neighborhood: {0}")]
    NoFunctionInNeighborhood(String),
    #[error("cannot extend: {0}")]
    CannotExtend(String),
    #[error("instance rejected: {}", .0.reason)]
    Rejected(Box<Rejection>),
    #[error("sentence is not universal: {0}")]
    NotUniversal(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("variable `{0}` is not bound by any quantifier")]
    FreeVariable(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for malformed input (as opposed to a well-formed question whose
    /// answer is negative).
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Validation(_)
                | Error::Syntax { .. }
                | Error::FreeVariable(_)
                | Error::Json(_)
                | Error::UniverseMismatch(_)
        )
    }

    /// Short stable identifier used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::Resource(_) => "resource",
            Error::OutOfRange { .. } => "out_of_range",
            Error::Unsupported(_) => "unsupported",
            Error::UniverseMismatch(_) => "universe_mismatch",
            Error::InconsistentNeighborhood => "inconsistent_neighborhood",
            Error::Precondition(_) => "precondition",
            Error::NotSeparable(_) => "not_separable",
            Error::SearchBoundExceeded { .. } => "search_bound_exceeded",
            Error::NoTopologyInNeighborhood(_) => "no_topology_in_neighborhood",
            Error::NoFunctionInNeighborhood(_) => "no_function_in_neighborhood",
            Error::CannotExtend(_) => "cannot_extend",
            Error::Rejected(_) => "rejected",
            Error::NotUniversal(_) => "not_universal",
            Error::Syntax { .. } => "syntax",
            Error::FreeVariable(_) => "free_variable",
            Error::Json(_) => "json",
        }
    }
}
