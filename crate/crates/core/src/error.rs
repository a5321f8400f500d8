use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    /// A structurally valid document with a bad field; `path` looks like `agents[1].values[2]`.
    #[error("{path}: {message}")]
    Field { path: String, message: String },

    #[error("entitlements sum {0} ≠ 1")]
    EntitlementSum(String),

    #[error("invalid allocation: {0}")]
    Allocation(String),

    #[error("size guard `{guard}` exceeded: {actual} > {limit} (raise it with FAIRSHARE_GUARD_LIMIT)")]
    Guard {
        guard: &'static str,
        actual: u128,
        limit: u128,
    },

    /// The requested method does not apply to this instance.
    #[error("method mismatch: {0}")]
    Mismatch(String),

    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn field(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Field {
        path: path.into(),
        message: message.into(),
    }
}
