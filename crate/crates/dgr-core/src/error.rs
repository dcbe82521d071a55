//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no elimination variable")]
    NoEliminationVariable,
    #[error("zero polynomial input")]
    ZeroInput,
    #[error("insufficient primes")]
    InsufficientPrimes,
    #[error("unlucky evaluation, reseed")]
    UnluckyEvaluation,
    #[error("balance obstructed at order {0}")]
    BalanceObstructed(i64),
    #[error("degenerate fibre")]
    DegenerateFibre,
    #[error("cap too small")]
    CapTooSmall,
    #[error("reducible on stratum")]
    ReducibleOnStratum,
    #[error("ramification profile ambiguous")]
    AmbiguousRamification,
    #[error("elimination order failed, permute")]
    EliminationOrderFailed,
    #[error("truncation insufficient, need order {0}")]
    TruncationInsufficient(i64),
    #[error("degenerate configuration")]
    DegenerateConfiguration,
    #[error("non-rational component: {0}")]
    NonRationalComponent(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}
