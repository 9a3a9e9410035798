use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,

    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    #[error("interval [{lo}, {hi}] does not isolate a single root (Sturm count {count})")]
    NotIsolating { lo: String, hi: String, count: usize },

    #[error("endpoint {0} is a root; could not nudge it away")]
    EndpointRoot(String),

    #[error("root matching ambiguous: {0}")]
    AmbiguousMatch(String),

    #[error("root iteration did not converge: {0}")]
    NotConverged(String),

    #[error("negative discriminant in crossing-point quadratic: {0}")]
    NegativeDiscriminant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
