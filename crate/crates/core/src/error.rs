use thiserror::Error;

use crate::termirial::Natural;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("invalid order {0}: the lowest order is -1")]
pub struct InvalidOrder(pub i64);

/// Failure of a bounded computation: an oracle, the loop simulator or the
/// figure builder.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuardError {
    #[error("projected work {projected} exceeds the budget of {budget}")]
    BudgetExceeded { projected: Natural, budget: u64 },
    #[error("{what} = {value} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
}

impl GuardError {
    pub(crate) fn check(projected: impl Into<Natural>, budget: u64) -> Result<(), GuardError> {
        let projected = projected.into();
        if projected > Natural::from(budget) {
            Err(GuardError::BudgetExceeded { projected, budget })
        } else {
            Ok(())
        }
    }
}
