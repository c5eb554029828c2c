use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse series spec `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("parameter out of range: {0}")]
    Domain(String),

    #[error("method `{method}` does not apply to `{spec}`")]
    Unsupported { method: String, spec: String },

    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid manifest: {0}")]
    Manifest(String),

    #[error("{context}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
