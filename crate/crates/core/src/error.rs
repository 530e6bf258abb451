use thiserror::Error;

/// Errors raised anywhere in the evaluation and identity pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Pochhammer symbol ({a})_{k} has a pole")]
    PolePochhammer { a: String, k: i64 },

    #[error("SingularLowerParameter: lower parameter #{index} ({value}) is a nonpositive integer not covered by a terminating upper parameter")]
    SingularLowerParameter { index: usize, value: String },

    #[error("coefficient c_{k} is singular: lower parameter #{index} reaches zero")]
    PoleCoefficient { index: usize, k: u64 },

    #[error("series did not converge within {max_terms} terms")]
    NoConvergence { max_terms: usize },

    #[error("argument outside the convergence domain: {0}")]
    DomainError(String),

    #[error("invalid evaluation control: {0}")]
    InvalidControl(String),

    #[error("jet division by a jet with vanishing constant term")]
    DivisionByZeroJet,

    #[error("power of a jet whose constant term is zero (branch point)")]
    BasePointAtBranchPoint,

    #[error("derivative of order {requested} requested from a jet of order {order}")]
    OrderTooLow { requested: usize, order: usize },

    #[error("jets have different base points or orders")]
    JetMismatch,

    #[error("expression evaluated at a branch point: {0}")]
    BranchPointEvaluation(String),

    #[error("singular coefficient: {0}")]
    SingularCoefficient(String),

    #[error("transform not applicable: {0}")]
    NotApplicable(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
