//! Library side of `geomctl`: spec files, rendering and the four commands.
//! The binary only parses flags and maps errors to exit codes.

pub mod commands;
pub mod numfmt;
pub mod render;
pub mod spec_doc;

use geomink::GeomError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed flags, values or files.
    #[error("{0}")]
    Input(String),
    /// The frame vectors are zero, not unit or dependent.
    #[error("invalid frame: {0}")]
    Frame(GeomError),
    #[error("{0}")]
    Geom(GeomError),
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::ZeroVector { .. } | GeomError::NotUnit { .. } | GeomError::DependentFrame { .. } => {
                CliError::Frame(e)
            }
            other => CliError::Geom(other),
        }
    }
}

impl CliError {
    /// 3 for frame errors, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Frame(_) => 3,
            CliError::Input(_) | CliError::Geom(_) => 2,
        }
    }
}
