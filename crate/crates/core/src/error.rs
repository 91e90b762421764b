use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// The variants split into two families: input problems (the data handed in
/// does not satisfy a precondition) and computational limits (the inputs are
/// fine but the configured precision or degree bound was not enough). The CLI
/// maps the second family to a distinct exit code, see [`Error::is_limit`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("Hensel condition failed: {0}")]
    HenselConditionFailed(String),
    #[error("polynomial is not Eisenstein: {0}")]
    NotEisenstein(String),
    #[error("no primitive element found after {0} attempts")]
    PrimitiveElementSearchFailed(usize),
    #[error("degree bound exceeded: degree {degree} > bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error("unsupported extension step: {0}")]
    UnsupportedExtension(String),
    #[error("objects live at different Galois levels: {0}")]
    LevelMismatch(String),
    #[error("subgroups are not nested: {0}")]
    NotNested(String),
    #[error("matrix is singular modulo the truncation: {0}")]
    Singular(String),
    #[error("lattice map is not injective: {0}")]
    NotInjective(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for errors that signal a resource limit rather than bad input.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted(_)
                | Error::DegreeBoundExceeded { .. }
                | Error::PrimitiveElementSearchFailed(_)
                | Error::UnsupportedExtension(_)
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::HenselConditionFailed(_) => "HenselConditionFailed",
            Error::NotEisenstein(_) => "NotEisenstein",
            Error::PrimitiveElementSearchFailed(_) => "PrimitiveElementSearchFailed",
            Error::DegreeBoundExceeded { .. } => "DegreeBoundExceeded",
            Error::UnsupportedExtension(_) => "UnsupportedExtension",
            Error::LevelMismatch(_) => "LevelMismatch",
            Error::NotNested(_) => "NotNested",
            Error::Singular(_) => "Singular",
            Error::NotInjective(_) => "NotInjective",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
