use thiserror::Error;

use crate::validate::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("seed set must be nonempty")]
    EmptySeed,

    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    #[error("model failed validation: {0}")]
    Invalid(ValidationReport),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown node label `{0}`")]
    UnknownLabel(String),

    #[error("invalid probability `{0}`: {1}")]
    BadProbability(String, &'static str),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed model file: {0}")]
    Schema(String),

    #[error("not a progressive sequence: {0}")]
    NotProgressive(String),

    /// The operation is defined only for node-independent models.
    #[error("{0} requires a node-independent model; correlated models are out of its scope")]
    RequiresNodeIndependent(&'static str),

    #[error("no conversion from `{from}` to `{to}`: {reason}")]
    Unconvertible {
        from: &'static str,
        to: &'static str,
        reason: &'static str,
    },

    #[error("enumeration budget exceeded: {needed} configurations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("{what} needs n <= {limit}, got n = {n}")]
    TooManyNodes {
        what: &'static str,
        n: usize,
        limit: usize,
    },
}

impl Error {
    /// True for failures that stem from resource limits rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::TooManyNodes { .. })
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptySeed => "empty_seed",
            Error::UniverseMismatch(_) => "universe_mismatch",
            Error::Invalid(_) => "validation",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::UnknownLabel(_) => "unknown_label",
            Error::BadProbability(..) => "bad_probability",
            Error::Syntax { .. } => "syntax",
            Error::Schema(_) => "schema",
            Error::NotProgressive(_) => "not_progressive",
            Error::RequiresNodeIndependent(_) => "requires_node_independent",
            Error::Unconvertible { .. } => "unconvertible",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::TooManyNodes { .. } => "too_many_nodes",
        }
    }
}
