//! Command-line front end for `pairlaw-core`: argument parsing, a threaded
//! stream executor, and CSV/JSON emitters.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod exec;
pub mod input;
pub mod output;

use std::path::PathBuf;

pub use args::{Cli, Format};
pub use commands::run;
pub use exec::Threaded;
pub use output::{Cell, OutputEnvelope, Results};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pairlaw_core::Error),
    #[error("{0}")]
    Parse(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::Parse(_) => "ParseError",
            CliError::Io { .. } => "IoError",
        }
    }

    /// 2 for invalid input, 3 for numerical tolerance failures, 4 for
    /// simulation truncation.
    pub fn exit_code(&self) -> i32 {
        use pairlaw_core::Error as E;
        match self {
            CliError::Core(E::ToleranceNotMet { .. } | E::NotUnimodal { .. }) => 3,
            CliError::Core(E::ExcessTruncation { .. }) => 4,
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pairlaw_core::Error;

    #[test]
    fn exit_codes() {
        let tol = CliError::from(Error::ToleranceNotMet {
            requested: 1e-12,
            achieved: 1e-9,
        });
        assert_eq!((tol.exit_code(), tol.name()), (3, "ToleranceNotMet"));
        assert_eq!(
            CliError::from(Error::NotUnimodal { peaks: 2 }).exit_code(),
            3
        );
        let cut = CliError::from(Error::ExcessTruncation {
            truncated: 5,
            trials: 10,
        });
        assert_eq!((cut.exit_code(), cut.name()), (4, "ExcessTruncation"));
        assert_eq!(CliError::from(Error::BadSum { sum: 1.1 }).exit_code(), 2);
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
    }
}
