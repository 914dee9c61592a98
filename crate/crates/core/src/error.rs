use thiserror::Error;

/// Errors raised by constructions on finite sets, polynomials and lenses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("duplicate label `{label}` in {context}")]
    DuplicateLabel { label: String, context: String },

    #[error("unknown label `{label}` in {context}")]
    UnknownLabel { label: String, context: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),

    #[error("size limit exceeded: {what} would have {size} entries (cap {cap})")]
    TooLarge { what: String, size: String, cap: usize },

    #[error("law violation: {0}")]
    LawViolation(String),

    #[error("not a monomial: {0}")]
    NotMonomial(String),

    #[error("invalid direction `{direction}` at position `{position}`")]
    InvalidDirection { position: String, direction: String },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = PolyError> = std::result::Result<T, E>;
