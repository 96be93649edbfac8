use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Each variant maps to a stable machine-readable code via [`Error::code`],
/// which the command-line front end emits verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("gate kind mismatch: {0}")]
    KindMismatch(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Butson-type (entry ({row}, {col}) is not a root of unity up to d_max)")]
    NotButson { row: usize, col: usize },

    #[error("Butson complexity {complexity} does not divide target dimension {dim}")]
    IncompatibleDimension { complexity: u64, dim: usize },

    #[error("matrix is not in dephased form")]
    NotDephased,

    #[error("columns {first} and {second} both match the permutation phases; tolerance too large")]
    Ambiguous { first: usize, second: usize },

    #[error("branches carry different displacements and cannot interfere")]
    IncoherentBranches,

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("exhaustive census needs {required} combinations, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier for scripted consumers.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedMatrix(_) => "malformed_matrix",
            Error::Domain(_) => "domain_error",
            Error::KindMismatch(_) => "kind_mismatch",
            Error::SizeMismatch(_) => "size_mismatch",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotButson { .. } => "not_butson",
            Error::IncompatibleDimension { .. } => "incompatible_dimension",
            Error::NotDephased => "not_dephased",
            Error::Ambiguous { .. } => "ambiguous",
            Error::IncoherentBranches => "incoherent_branches",
            Error::LimitExceeded(_) => "limit_exceeded",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::Parse(_) => "parse_error",
            Error::Io(_) => "io_error",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
