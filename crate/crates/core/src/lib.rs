//! Exact real arithmetic on `[-1, 1]` with lazy signed-digit streams.
//!
//! A real is a stream of digits in `{-1, 0, 1}`; its first `n` digits pin it
//! down to within `2^-n`. The crate provides the digit-level operators
//! (`x ± 1`, `2x`, `x/2 ± 1/4`, average, quotient), limits of convergent
//! stream sequences, and square roots built from Heron's method. Every
//! operator can be checked against the exact rational oracle in [`oracle`].

pub mod cli;
pub mod digit;
pub mod error;
pub mod limit;
pub mod oracle;
pub mod render;
pub mod sqrt;
pub mod stream;
pub mod transforms;

pub use digit::Digit;
pub use error::{Error, StreamError};
pub use limit::{classify, limit, limit_with, Modulus, Region, SeqShift, StreamSeq};
pub use oracle::{embed, enclosure, Enclosure, Rat};
pub use sqrt::{heron_seq, sqrt_stream, sqrt_stream_fast, sqrt_stream_with, SqrtConfig};
pub use stream::SdStream;
