use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("invalid simplex map: {0}")]
    InvalidMap(String),

    #[error("enumeration bound exceeded: {what} needs {needed}, limit is {limit}")]
    BoundExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("morphisms are not parallel: {0}")]
    NotParallel(String),

    #[error("morphism does not coequalize the defining pair")]
    DoesNotCoequalize,

    #[error("comparison map is not invertible: {0}")]
    NotInvertible(String),

    #[error("malformed data: {0}")]
    Shape(String),

    #[error("category mismatch: {0}")]
    CategoryMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("category axiom violated: {0}")]
    Axiom(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unresolved reference: {0}")]
    Reference(String),
}

impl Error {
    pub(crate) fn bound(what: impl Into<String>, needed: u128, limit: usize) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            needed,
            limit: limit as u128,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
