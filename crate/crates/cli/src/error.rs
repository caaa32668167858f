use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("physics error: {0}")]
    Physics(String),

    #[error("numerical failure: {0}")]
    Numerical(rydeit_core::Error),

    #[error("nothing to plot")]
    EmptyData,

    #[error("{0}")]
    Runtime(String),

    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema { path: path.into(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } => 2,
            CliError::Physics(_) => 3,
            CliError::Numerical(_) | CliError::EmptyData => 4,
            CliError::Io { .. } | CliError::Runtime(_) => 1,
        }
    }
}

impl From<rydeit_core::Error> for CliError {
    fn from(e: rydeit_core::Error) -> Self {
        use rydeit_core::Error as E;
        match e {
            E::InvalidParams(m) => CliError::Physics(m),
            E::DivisionByZero(name) => CliError::Physics(format!("detuning {name} is zero")),
            other => CliError::Numerical(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
