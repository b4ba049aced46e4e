use thiserror::Error;

use crate::rootdata::RootDataError;
use crate::weyl::WeylError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("{element} is not a minimal representative for K = {k:?}")]
    NotMinimal { element: String, k: Vec<usize> },
    #[error("type {k:?} is not contained in I = {i:?}")]
    TypeNotInI { k: Vec<usize>, i: Vec<usize> },
    #[error("invalid automorphism: {0}")]
    BadSigma(String),
    #[error("{0} is not small")]
    NotSmall(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("matrix is singular")]
    Singular,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::Weyl(WeylError::BudgetExceeded { .. }))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
