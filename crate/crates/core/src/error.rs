use thiserror::Error;

/// Crate-wide error type. Every fallible operation reports through this enum,
/// and the CLI maps each class onto a stable process exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text. `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Malformed expression text with a column position (1-based).
    #[error("line {line}, column {col}: {msg}")]
    ParseAt { line: usize, col: usize, msg: String },

    /// Structurally valid input used outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Arguments that do not fit together (wrong ambient space, bad index).
    #[error("invalid input: {0}")]
    Input(String),

    /// A validated constructor rejected its input, naming the witness.
    #[error("construction error: {0}")]
    Construction(String),

    /// A configured search or size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A query needs data above the requested truncation degree.
    #[error("insufficient truncation: computed through degree {computed}, query needs degree {required}")]
    Truncation { computed: usize, required: usize },

    /// Caller-supplied invariants contradict each other.
    #[error("contradictory bounds: {0}")]
    Contradiction(String),

    /// A request outside the supported fragment (refused, never approximated).
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code contract used by the `htc` binary:
    /// 2 input/parse/domain errors, 3 resource caps, 4 insufficient truncation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 3,
            Error::Truncation { .. } => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
