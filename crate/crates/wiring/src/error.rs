use polydyn::PolyError;
use thiserror::Error;

use crate::ast::Span;
use crate::validate::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WiringError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },

    #[error("{span}: duplicate {kind} `{name}` (first declared at {first})")]
    Duplicate {
        kind: &'static str,
        name: String,
        span: Span,
        first: Span,
    },

    #[error("{span}: undeclared {kind} `{name}`")]
    Undeclared { kind: &'static str, name: String, span: Span },

    #[error("invalid wiring:\n{0}")]
    Invalid(ValidationReport),

    #[error("{span}: machine `{owner}`: {message}")]
    Machine { owner: String, span: Span, message: String },

    #[error("machine `{owner}`: table is partial, missing {}", missing.join("; "))]
    PartialTable { owner: String, missing: Vec<String> },

    #[error("box `{0}` has no machine")]
    MissingMachine(String),

    #[error(transparent)]
    Core(#[from] PolyError),
}

pub type Result<T, E = WiringError> = std::result::Result<T, E>;
