use crate::info::Var;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A linear-algebra step failed on the listed variables (for example a
    /// covariance block that is not positive definite even after jitter).
    #[error("numeric failure on {vars:?}: {msg}")]
    Numeric { msg: String, vars: Vec<Var> },

    /// A grid search was asked to enumerate more cells than its budget.
    #[error("search grid has {cells} cells, exceeding the budget of {budget}")]
    BudgetExceeded { cells: u128, budget: u128 },

    /// A channel fixture file could not be read or failed validation.
    #[error("fixture {path}: {msg}")]
    Fixture { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
