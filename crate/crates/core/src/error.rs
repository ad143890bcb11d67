use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("not invertible: {0}")]
    NotInvertible(&'static str),

    #[error("inexact division: homogeneous component of degree {degree} is not divisible")]
    InexactDivision { degree: usize },

    #[error("validity order {order} is too low for this operation (needs at least {needed})")]
    InsufficientOrder { order: usize, needed: usize },

    #[error("degenerate linear part: {0}")]
    DegenerateLinearPart(&'static str),

    #[error("linear coefficient must be {expected}, got {found}")]
    BadLinearCoefficient { expected: String, found: String },

    #[error("homothety factor must be nonzero")]
    ZeroLambda,

    #[error("bad linear part: {0}")]
    BadLinearPart(String),

    #[error("perturbation must have a vanishing 1-jet")]
    BadJet,

    #[error("perturbation is not admissible for the {0} model")]
    NotInvariant(&'static str),

    #[error("residual check failed: {0}")]
    Residual(String),

    #[error("parse error at byte {offset}: expected {}", expected.join(" or "))]
    Parse { offset: usize, expected: Vec<String> },

    #[error("negative exponent at byte {offset}")]
    NegativeExponent { offset: usize },

    #[error("variable `{name}` is not allowed here (byte {offset})")]
    UnexpectedVariable { name: char, offset: usize },
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::NegativeExponent { .. } | Error::UnexpectedVariable { .. }
        )
    }
}
