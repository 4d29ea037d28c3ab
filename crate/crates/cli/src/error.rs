use std::process::ExitCode;

use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag values or unreadable inputs.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] spgraph_core::Error),
    #[error("writing {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// Checks ran but at least one failed; the report has already been written.
    #[error("{failed} check(s) failed")]
    Verification { failed: usize },
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Verification { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Output { .. } => 3,
        })
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Numeric(_) => "numeric",
            CliError::Output { .. } => "output",
            CliError::Verification { .. } => "verification",
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}
