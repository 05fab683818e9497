use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller violated an operation's precondition (wrong degree, singular
    /// matrix, mismatched dimensions, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A rewrite system or presentation is malformed.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("not a unit: {0}")]
    InvalidUnit(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("class is not in the kernel lattice: {0}")]
    NotInKernel(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("fiber is non-Gorenstein everywhere: {0}")]
    NonGorensteinEverywhere(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    /// Short machine-readable tag, used by the CLI when reporting errors as JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Contract(_) => "contract",
            Error::DegenerateInput(_) => "degenerate_input",
            Error::Config(_) => "config",
            Error::InvalidUnit(_) => "invalid_unit",
            Error::Unsupported(_) => "unsupported",
            Error::NotInKernel(_) => "not_in_kernel",
            Error::InternalConsistency(_) => "internal_consistency",
            Error::NonGorensteinEverywhere(_) => "non_gorenstein_everywhere",
            Error::Parse { .. } => "parse",
        }
    }
}
