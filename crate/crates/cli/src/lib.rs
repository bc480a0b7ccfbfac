//! Command-line front end: the algebra JSON format, subcommands and reports.

pub mod commands;
pub mod report;
pub mod schema;

use std::io::Read;

use thiserror::Error;

pub use commands::Options;
pub use schema::{Algebra, AlgebraInput};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] incidence::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for off-locus laws, 3 for malformed input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(incidence::Error::NotOnLocus { .. }) => 2,
            CliError::Schema(_) | CliError::Core(incidence::Error::UnknownBuiltin(_)) => 3,
            _ => 1,
        }
    }
}

/// Reads an input given as a path, `-` for standard input, or `builtin:NAME`.
pub fn load(source: &str) -> Result<Algebra, CliError> {
    let input = if let Some(name) = source.strip_prefix("builtin:") {
        commands::cmd_builtin(name)?
    } else {
        let text = if source == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io {
                path: "<stdin>".into(),
                source: e,
            })?;
            s
        } else {
            std::fs::read_to_string(source).map_err(|e| CliError::Io {
                path: source.into(),
                source: e,
            })?
        };
        schema::from_json(&text)?
    };
    input.validate()
}
