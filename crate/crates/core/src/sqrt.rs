//! Square roots via Heron's method and the stream limit.

use std::sync::{Arc, Mutex};

use crate::digit::Digit::{NegOne, One, Zero};
use crate::error::StreamError;
use crate::limit::{limit_with, Modulus, SeqShift, StreamSeq};
use crate::stream::SdStream;
use crate::transforms::{average, divide};

/// Heron iterates of `v` as streams: `H(0) = 1`, `H(n+1) = (H(n) + v/H(n)) / 2`.
///
/// Needs `val(v) >= 1/16` so that every divisor is at least `1/4`. Levels are
/// built once and shared, so `H(n+1)` reuses the forced digits of `H(n)`.
pub fn heron_seq(v: SdStream) -> StreamSeq {
    let levels = Arc::new(HeronLevels {
        v,
        levels: Mutex::new(vec![SdStream::constant(One)]),
    });
    StreamSeq::new(move |n| levels.get(n as usize))
}

struct HeronLevels {
    v: SdStream,
    levels: Mutex<Vec<SdStream>>,
}

impl HeronLevels {
    fn get(&self, n: usize) -> SdStream {
        let mut levels = self.levels.lock().unwrap_or_else(|e| e.into_inner());
        while levels.len() <= n {
            let h = levels.last().expect("level 0 always present").clone();
            let next = average(h.clone(), divide(self.v.clone(), h));
            levels.push(next);
        }
        levels[n].clone()
    }
}

/// Modulus of the Heron sequence on `[0, 1]`: `p -> p`.
pub fn iota() -> Modulus {
    Modulus::identity()
}

/// Least `n` with `p <= 2^n`.
pub fn poslog(p: u64) -> u64 {
    auxlog(p, 0)
}

fn auxlog(p: u64, n: u64) -> u64 {
    if n >= 64 || p <= 1u64 << n {
        n
    } else {
        auxlog(p, n + 1)
    }
}

/// Modulus of the Heron sequence on `[1/4, 1]`, where convergence is quadratic.
pub fn poslog_modulus() -> Modulus {
    Modulus::new(poslog)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HeronModulus {
    #[default]
    Iota,
    Poslog,
}

impl HeronModulus {
    pub fn modulus(self) -> Modulus {
        match self {
            HeronModulus::Iota => iota(),
            HeronModulus::Poslog => poslog_modulus(),
        }
    }
}

pub const DEFAULT_MAX_PEEL_DEPTH: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SqrtConfig {
    pub modulus: HeronModulus,
    pub shift: SeqShift,
    /// How many leading digit pairs may be peeled off before the stream
    /// fails with [`StreamError::SqrtPeelDepth`].
    pub max_peel_depth: usize,
}

impl Default for SqrtConfig {
    fn default() -> Self {
        SqrtConfig {
            modulus: HeronModulus::Iota,
            shift: SeqShift::Max,
            max_peel_depth: DEFAULT_MAX_PEEL_DEPTH,
        }
    }
}

/// `sqrt(x)` for `val(s) >= 0`, taking the Heron limit under `p -> p`.
pub fn sqrt_stream(s: SdStream) -> SdStream {
    sqrt_stream_with(s, SqrtConfig::default())
}

/// As [`sqrt_stream`], with the `poslog` modulus in the Heron branch.
pub fn sqrt_stream_fast(s: SdStream) -> SdStream {
    sqrt_stream_with(
        s,
        SqrtConfig {
            modulus: HeronModulus::Poslog,
            ..SqrtConfig::default()
        },
    )
}

pub fn sqrt_stream_with(s: SdStream, config: SqrtConfig) -> SdStream {
    sqrt_peeled(s, config, 0)
}

fn sqrt_peeled(s: SdStream, config: SqrtConfig, depth: usize) -> SdStream {
    match s.as_constant() {
        Some(NegOne | Zero) => return SdStream::zeros(),
        Some(One) => return SdStream::constant(One),
        None => {}
    }
    SdStream::defer(move || {
        if depth > config.max_peel_depth {
            return Err(StreamError::SqrtPeelDepth { depth });
        }
        let (d1, t1) = s.uncons()?;
        if d1 == NegOne {
            return Ok(SdStream::zeros());
        }
        let (d2, t2) = t1.uncons()?;
        let peel = |u: SdStream| SdStream::cons(Zero, sqrt_peeled(u, config, depth + 1));
        match (d1, d2) {
            (Zero, NegOne) => return Ok(SdStream::zeros()),
            (Zero, Zero) => return Ok(peel(t2)),
            _ => {}
        }
        let (d3, t3) = t2.uncons()?;
        Ok(match (d1, d2, d3) {
            (Zero, One, NegOne) | (One, NegOne, NegOne) => peel(SdStream::cons(One, t3)),
            _ => limit_with(config.modulus.modulus(), heron_seq(s), config.shift),
        })
    })
}
