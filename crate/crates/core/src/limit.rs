//! Limits of convergent stream sequences.
//!
//! Given streams `F(0), F(1), ...` converging to `x` with modulus `M`
//! (`|F(n) - x| <= 2^-p` whenever `n >= M(p)`), [`limit`] produces a stream
//! for `x`. Each output digit is decided from the first three digits of
//! `F(M(4))`; the remaining sequence is rescaled and the modulus shifted.

use std::fmt;
use std::sync::Arc;

use crate::digit::Digit::{self, NegOne, One, Zero};
use crate::error::StreamError;
use crate::stream::SdStream;
use crate::transforms::{double, q_minus, q_plus};

/// A modulus of convergence `p -> M(p)`, queried for `p >= 1`.
#[derive(Clone)]
pub struct Modulus {
    f: Arc<dyn Fn(u64) -> u64 + Send + Sync>,
    offset: u64,
}

impl Modulus {
    pub fn new(f: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Modulus {
        Modulus {
            f: Arc::new(f),
            offset: 0,
        }
    }

    /// `p -> p`.
    pub fn identity() -> Modulus {
        Modulus::new(|p| p)
    }

    /// `p -> n`; the modulus of a constant sequence when `n = 0`.
    pub fn constant(n: u64) -> Modulus {
        Modulus::new(move |_| n)
    }

    pub fn at(&self, p: u64) -> u64 {
        (self.f)(p + self.offset)
    }

    /// `p -> M(p + k)`.
    pub fn shifted(&self, k: u64) -> Modulus {
        Modulus {
            f: self.f.clone(),
            offset: self.offset + k,
        }
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Modulus(offset {})", self.offset)
    }
}

/// A sequence of streams `n -> F(n)`.
#[derive(Clone)]
pub struct StreamSeq(Arc<dyn Fn(u64) -> SdStream + Send + Sync>);

impl StreamSeq {
    pub fn new(f: impl Fn(u64) -> SdStream + Send + Sync + 'static) -> StreamSeq {
        StreamSeq(Arc::new(f))
    }

    pub fn constant(s: SdStream) -> StreamSeq {
        StreamSeq::new(move |_| s.clone())
    }

    pub fn at(&self, n: u64) -> SdStream {
        (self.0)(n)
    }
}

impl fmt::Debug for StreamSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("StreamSeq(..)")
    }
}

/// How the rescaled sequence re-indexes the old one after each digit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SeqShift {
    /// `n -> F(max(M(4), n))`
    #[default]
    Max,
    /// `n -> F(M(4) + n)`
    Plus,
}

impl SeqShift {
    fn index(self, m4: u64, n: u64) -> u64 {
        match self {
            SeqShift::Max => m4.max(n),
            SeqShift::Plus => m4 + n,
        }
    }
}

/// Three-way split of streams by their first (at most three) digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// value `>= 1/8`
    Right,
    /// value in `[-1/4, 1/4]`
    Middle,
    /// value `<= -1/8`
    Left,
}

impl Region {
    /// The limit digit emitted for this region.
    pub fn digit(self) -> Digit {
        match self {
            Region::Right => One,
            Region::Middle => Zero,
            Region::Left => NegOne,
        }
    }

    /// Rescale a stream after emitting [`Region::digit`]: `4(x/2 - 1/4)`,
    /// `2x` or `4(x/2 + 1/4)`.
    pub fn rescale(self, s: SdStream) -> SdStream {
        match self {
            Region::Right => double(double(q_minus(s))),
            Region::Middle => double(s),
            Region::Left => double(double(q_plus(s))),
        }
    }
}

/// Region of a three-digit prefix.
///
/// Right: `11 10 1-11 1-10 011 010`. Left: the mirror images.
/// Middle: `00 -111 1-1-1 01-1 0-11`.
pub fn region_of(d1: Digit, d2: Digit, d3: Digit) -> Region {
    match (d1, d2, d3) {
        (One, One | Zero, _) | (One, NegOne, One | Zero) | (Zero, One, One | Zero) => Region::Right,
        (NegOne, NegOne | Zero, _)
        | (NegOne, One, NegOne | Zero)
        | (Zero, NegOne, NegOne | Zero) => Region::Left,
        _ => Region::Middle,
    }
}

/// Classify a stream, reading the third digit only when the first two do
/// not decide.
pub fn classify(s: &SdStream) -> Result<Region, StreamError> {
    let (d1, rest) = s.uncons()?;
    let (d2, rest) = rest.uncons()?;
    match (d1, d2) {
        (One, One | Zero) => Ok(Region::Right),
        (NegOne, NegOne | Zero) => Ok(Region::Left),
        (Zero, Zero) => Ok(Region::Middle),
        _ => Ok(region_of(d1, d2, rest.head()?)),
    }
}

/// The limit of `seq` under modulus `modulus`, re-indexing by `max(M(4), n)`.
pub fn limit(modulus: Modulus, seq: StreamSeq) -> SdStream {
    limit_with(modulus, seq, SeqShift::Max)
}

pub fn limit_with(modulus: Modulus, seq: StreamSeq, shift: SeqShift) -> SdStream {
    SdStream::defer(move || {
        let m4 = modulus.at(4);
        let probe = seq.at(m4);
        let region = classify(&probe)?;
        let next = StreamSeq::new(move |n| {
            let i = shift.index(m4, n);
            // F(M(4)) is already partly forced; reuse it.
            let s = if i == m4 { probe.clone() } else { seq.at(i) };
            region.rescale(s)
        });
        Ok(SdStream::cons(
            region.digit(),
            limit_with(modulus.shifted(1), next, shift),
        ))
    })
}
