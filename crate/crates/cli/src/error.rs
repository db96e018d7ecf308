use thiserror::Error;

/// A manifest field that failed validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("manifest field `{field}`: {reason}")]
pub struct ManifestError {
    pub field: String,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Manifest(#[from] ManifestError),

    #[error("{0}")]
    Core(#[from] dzk_core::Error),

    #[error("i/o: {0}")]
    Io(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("DZK_THREADS: {0}")]
    Threads(String),

    #[error("no results found in {0}")]
    EmptyReport(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
