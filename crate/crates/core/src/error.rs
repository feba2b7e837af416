use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),

    #[error("no value assigned to coordinate `{0}`")]
    MissingAssignment(String),

    #[error("duplicate coordinate `{0}` in chart")]
    DuplicateCoordinate(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("operands live on different charts (`{left}` vs `{right}`)")]
    ChartMismatch { left: String, right: String },

    #[error("polynomial depends on `{0}`, which the target chart does not have")]
    NotRestrictable(String),

    #[error("degree mismatch: {0}")]
    Degree(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("form is not linear on the total space")]
    NotLinear,

    #[error("multivector is not linear on the total space")]
    NotLinearMultivector,

    #[error("algebroid `{0}` fails the Lie algebroid axioms")]
    AxiomFailure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("fiber functional is missing a value for frame section `{0}`")]
    IncompleteFunctional(String),

    #[error("algebroid mismatch")]
    AlgebroidMismatch,

    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
