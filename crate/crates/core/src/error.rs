use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the toolkit.
///
/// The variants are grouped by the kind of failure so that callers (the CLI
/// in particular) can map them onto exit codes without inspecting messages.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid user-supplied configuration (ratios, orders, lambdas, ...).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("training error: {0}")]
    Training(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("feature extraction error: {0}")]
    Feature(String),

    #[error("fit error: {0}")]
    Fit(String),

    /// A fitted model was used with an incompatible feature configuration.
    #[error("compatibility error: {0}")]
    Compatibility(String),

    /// A persisted model could not be decoded.
    #[error("load error: {0}")]
    Load(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
