use serde_json::{json, Value};

pub const ERROR_SCHEMA: &str = "qeuler.error/v1";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(qeuler_core::Error),
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "io",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "schema": ERROR_SCHEMA, "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<qeuler_core::Error> for CliError {
    fn from(e: qeuler_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
