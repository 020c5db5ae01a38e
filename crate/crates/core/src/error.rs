use thiserror::Error;

use crate::oracle::Rat;

/// Failure raised while forcing a stream cell. Cached in the cell, so it is
/// reported again on every later demand.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error(
        "division stalled at output digit {digit}: no digit decidable after {rounds} refinement rounds \
         (divisor below 1/4 or |dividend| above divisor?)"
    )]
    DivisionStalled { digit: usize, rounds: usize },
    #[error("square root peeled {depth} leading 00 pairs without reaching a Heron branch")]
    SqrtPeelDepth { depth: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error("{value} is outside {domain}")]
    OutOfDomain { value: Rat, domain: &'static str },
    #[error("division precondition violated: need |a| <= b and b >= 1/4, got a = {a}, b = {b}")]
    DivisionPrecondition { a: Rat, b: Rat },
}
