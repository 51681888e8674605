use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("division by the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A documented precondition on the input (e.g. the congruence class of p) does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate bilinear form")]
    Degenerate,

    #[error("class is not in the lattice: {0}")]
    NotInLattice(String),

    #[error("class is not a section modulo the trivial lattice: {0}")]
    NotASection(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An internal check failed. Never expected for valid input.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// True for errors caused by bad caller input rather than a bug.
    pub fn is_input_error(&self) -> bool {
        matches!(self.root(), Error::Precondition(_) | Error::InvalidInput(_))
    }
}
