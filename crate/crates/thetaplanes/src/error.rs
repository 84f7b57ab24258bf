use thiserror::Error;

/// Errors produced by the exact-geometry kernel and the higher-level
/// configuration / recovery operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The given points do not span a hyperplane; `defect` is the number of
    /// missing dimensions.
    #[error("degenerate span: defect {defect}")]
    DegenerateSpan { defect: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    #[error("degenerate pencil: {0}")]
    DegeneratePencil(String),

    #[error("synthesis failed: {0}")]
    SynthesisFailed(String),

    #[error("not a span configuration: {0}")]
    NotASpanConfiguration(String),

    #[error("not a split configuration: {0}")]
    NotASplitConfiguration(String),

    #[error("inconsistent configuration: {0}")]
    InconsistentConfiguration(String),

    #[error("wrong stratification: {0}")]
    WrongStratification(String),

    #[error("genericity failure: {0}")]
    GenericityFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed input or out-of-range parameters,
    /// as opposed to a mathematical inconsistency detected in valid input.
    /// The CLI maps the former to exit code 2 and the latter to exit code 1.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::InvalidModel(_) | Error::Parse(_) | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
