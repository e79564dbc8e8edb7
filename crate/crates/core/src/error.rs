use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate edge ({src}, {dst})")]
    DuplicateEdge { src: String, dst: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("graph has no edge weights; numeric computation requires a weighted graph")]
    MissingWeights,

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short stable identifier used in machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Parse { .. } => "parse",
            Error::DuplicateEdge { .. } => "duplicate_edge",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NonFinite(_) => "non_finite",
            Error::MissingWeights => "missing_weights",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::Numerical(_) => "numerical",
            Error::Io { .. } => "io",
        }
    }

    /// Process exit code: 3 for internal numerical failures, 2 for everything
    /// caused by the inputs.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerical(_) => 3,
            _ => 2,
        }
    }

    /// One-line JSON object `{"error": kind, "message": text}`.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}
