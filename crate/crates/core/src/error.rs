use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation undefined on the zero ideal")]
    ZeroIdeal,

    #[error("operation undefined on the unit ideal")]
    UnitIdeal,

    #[error("ideal is not primary to the maximal ideal")]
    NotPrimary,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exponent overflow")]
    Overflow,

    #[error("state budget of {budget} exceeded{}", lower_bound.map(|b| format!(" (lower bound {b})")).unwrap_or_default())]
    BudgetExceeded { budget: usize, lower_bound: Option<u64> },

    #[error("length grid did not stabilize: {0}")]
    NotStabilized(String),

    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u64, u64),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("degeneration input rejected: {0}")]
    InvalidDegeneration(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),
}
