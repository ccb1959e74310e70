//! Instance file format and report document shared by the binary and its
//! tests.

pub mod file;
pub mod report;

/// Input-level failures; they exit with status 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<semitop_core::ModelError> for CliError {
    fn from(e: semitop_core::ModelError) -> CliError {
        CliError::Input(e.to_string())
    }
}
