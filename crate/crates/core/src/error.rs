use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system {series}{rank}")]
    Unsupported { series: String, rank: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("rewriting step budget of {0} exhausted")]
    StepBudget(u64),
    #[error("matrix is not in N_+ s N_+")]
    NotInCell,
    #[error("element mixes e- and f-letters: {0}")]
    MixedSide(String),
    #[error("representation {0} is not in the catalogue")]
    UnknownRep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
