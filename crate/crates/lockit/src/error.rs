use crate::spec::ParseError;

/// Input errors; all map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("line {line}: {message}")]
    Load { line: usize, message: String },
    #[error("{0}")]
    Core(#[from] lockit_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}
