use thiserror::Error;

/// Library-wide error type.
///
/// Variants map onto the CLI exit-code policy: `Resource` and `Numeric` are
/// runtime/numeric failures; everything else is a validation failure the
/// caller can fix by changing inputs.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration: duplicate or missing modes, malformed scenario shape.
    #[error("configuration error: {0}")]
    Config(String),
    /// Mathematical-domain violation: zero wavevector, non-Hermitian input, bad parameter range.
    #[error("domain error: {0}")]
    Domain(String),
    /// Mode not present in the space it was looked up in.
    #[error("lookup error: {0}")]
    Lookup(String),
    /// Operands built over different spaces.
    #[error("space mismatch: {0}")]
    Mismatch(String),
    /// Hilbert-space dimension exceeds the configured budget.
    #[error("resource error: {0}")]
    Resource(String),
    /// Non-finite entries or a numerically invalid state.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// Truncation too small for the requested parameters; `required_n_max` is adequate.
    #[error("convergence guard: {msg} (need n_max >= {required_n_max})")]
    Convergence { msg: String, required_n_max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
