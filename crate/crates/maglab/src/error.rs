use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] maglab_core::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Exit status when a command ran but some check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for malformed input or arguments.
pub const EXIT_BAD_INPUT: i32 = 2;
/// Exit status for a computation that could not be completed.
pub const EXIT_COMPUTATION: i32 = 3;

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Json(_) => "Json",
            CliError::Io { .. } => "Io",
            CliError::Input(_) => "Input",
        }
    }

    pub fn exit_code(&self) -> i32 {
        use maglab_core::Error as E;
        match self {
            CliError::Core(
                E::TooLarge { .. } | E::ConductorCap { .. } | E::PossiblySingular | E::InexactDivision | E::NoWitness(_),
            ) => EXIT_COMPUTATION,
            _ => EXIT_BAD_INPUT,
        }
    }

    /// `{"error": {"kind": ..., "message": ...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({"error": {"kind": self.kind(), "message": self.to_string()}})
    }
}
