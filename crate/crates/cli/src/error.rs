use std::fmt;
use std::path::Path;

/// Failure of a subcommand, carrying the exit code class.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or config values. Exit code 1.
    Validation(String),
    /// Unreadable, unwritable or malformed files. Exit code 2.
    Io(String),
    /// The computation itself failed. Exit code 3.
    Compute(String),
    /// Stdout was closed by the reader, as in `leichtkit stats | head`.
    /// Not reported; exit code 0.
    PipeClosed,
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
            CliError::Compute(_) => 3,
            CliError::PipeClosed => 0,
        }
    }

    /// Validation error attributed to a flag.
    pub fn flag(flag: &str, msg: impl fmt::Display) -> Self {
        CliError::Validation(format!("{flag}: {msg}"))
    }

    pub fn file(path: &Path, msg: impl fmt::Display) -> Self {
        CliError::Io(format!("{}: {msg}", path.display()))
    }

    /// Malformed record at a 1-based line of an input file.
    pub fn record(path: &Path, line: usize, msg: impl fmt::Display) -> Self {
        CliError::Io(format!("{}:{line}: {msg}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid argument: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Compute(m) => write!(f, "computation failed: {m}"),
            CliError::PipeClosed => write!(f, "output closed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<leichtkit::Error> for CliError {
    fn from(e: leichtkit::Error) -> Self {
        use leichtkit::Error as E;
        match e {
            E::Config(_) => CliError::Validation(e.to_string()),
            E::Io(_) | E::Json(_) | E::Load(_) => CliError::Io(e.to_string()),
            E::Training(_) | E::Evaluation(_) | E::Feature(_) | E::Fit(_) | E::Compatibility(_) => {
                CliError::Compute(e.to_string())
            }
        }
    }
}
