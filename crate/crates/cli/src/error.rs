use std::fmt;

/// CLI failure, split by exit code: 2 for configuration, 3 for numerics.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numeric(m) => write!(f, "numerical error: {m}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn config<E: fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

pub fn numeric<E: fmt::Display>(e: E) -> CliError {
    CliError::Numeric(e.to_string())
}
