use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("invalid causal graph: {0}")]
    Graph(String),

    #[error("regression for node `{node}` failed: {reason}")]
    SingularDesign { node: String, reason: String },

    #[error("degenerate labels: {0}")]
    DegenerateLabels(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid constraints: {0}")]
    Constraint(String),

    #[error("ingestion error at row {row}, column {column}: {message}")]
    Ingestion { row: usize, column: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("input file not found: {path} ({hint})")]
    MissingInput { path: PathBuf, hint: String },

    #[error("soundness check failed: {0}")]
    Soundness(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// Innermost error, skipping context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }
}
