//! Exact rational arithmetic: embedding rationals as streams, prefix
//! enclosures, certified square-root bounds and the rational Heron iteration.
//!
//! Nothing here uses floating point. This module is the reference every
//! stream operator is checked against.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::digit::Digit;
use crate::error::{Error, StreamError};
use crate::stream::SdStream;

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(numer.into(), denom.into())
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// `2^k` for any integer `k`.
pub fn pow2(k: i64) -> Rat {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

fn digit_rat(d: Digit) -> Rat {
    int(d.value() as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("malformed rational {text:?}: {reason}")]
pub struct ParseRatError {
    pub text: String,
    pub reason: &'static str,
}

/// Parse `"p/q"` or `"p"`, with an optional leading sign on `p`.
pub fn parse_rat(text: &str) -> Result<Rat, ParseRatError> {
    let err = |reason| ParseRatError {
        text: text.to_string(),
        reason,
    };
    let is_int = |s: &str| {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    if !is_int(num) {
        return Err(err("numerator is not an integer"));
    }
    let numer = BigInt::from_str(num.trim_start_matches('+')).map_err(|_| err("bad numerator"))?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("denominator is not an unsigned integer"));
            }
            BigInt::from_str(d).map_err(|_| err("bad denominator"))?
        }
    };
    if denom.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(numer, denom))
}

fn check_range(q: &Rat, lo: &Rat, hi: &Rat, domain: &'static str) -> Result<(), Error> {
    if q < lo || q > hi {
        return Err(Error::OutOfDomain {
            value: q.clone(),
            domain,
        });
    }
    Ok(())
}

/// The signed-digit stream of a rational in `[-1, 1]`.
///
/// Digit rule: `-1` below `-1/4`, `1` above `1/4`, otherwise `0`; continue
/// with `2q - d`, which stays in `[-1, 1]`.
pub fn embed(q: &Rat) -> Result<SdStream, Error> {
    check_range(q, &int(-1), &int(1), "[-1, 1]")?;
    Ok(embed_unchecked(q.clone()))
}

fn embed_unchecked(q: Rat) -> SdStream {
    if q.is_zero() {
        return SdStream::zeros();
    }
    if q.is_one() {
        return SdStream::constant(Digit::One);
    }
    if q == -Rat::one() {
        return SdStream::constant(Digit::NegOne);
    }
    SdStream::defer(move || {
        let quarter = rat(1, 4);
        let d = if q < -quarter.clone() {
            Digit::NegOne
        } else if q > quarter {
            Digit::One
        } else {
            Digit::Zero
        };
        let next = q * int(2) - digit_rat(d);
        Ok(SdStream::cons(d, embed_unchecked(next)))
    })
}

/// `sum_{i <= n} d_i 2^-i`.
pub fn prefix_value(s: &SdStream, n: usize) -> Result<Rat, StreamError> {
    // Accumulate as an integer over 2^n.
    let mut acc = BigInt::zero();
    for d in s.digits().take(n) {
        acc = (acc << 1u32) + BigInt::from(d?.value());
    }
    Ok(Rat::new(acc, BigInt::one() << n))
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl Enclosure {
    pub fn new(lo: Rat, hi: Rat) -> Enclosure {
        assert!(lo <= hi, "empty enclosure [{lo}, {hi}]");
        Enclosure { lo, hi }
    }

    pub fn point(q: Rat) -> Enclosure {
        Enclosure {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, q: &Rat) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Exact test of `sqrt(q)` membership for `q >= 0`, by squaring the endpoints.
    pub fn contains_sqrt_of(&self, q: &Rat) -> bool {
        assert!(!q.is_negative(), "square root of negative {q}");
        let lo_ok = !self.lo.is_positive() || &self.lo * &self.lo <= *q;
        let hi_ok = !self.hi.is_negative() && &self.hi * &self.hi >= *q;
        lo_ok && hi_ok
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `[prefix_value(s, n) - 2^-n, prefix_value(s, n) + 2^-n]`, which contains `val(s)`.
pub fn enclosure(s: &SdStream, n: usize) -> Result<Enclosure, StreamError> {
    let mid = prefix_value(s, n)?;
    let r = pow2(-(n as i64));
    Ok(Enclosure::new(&mid - &r, mid + r))
}

/// Enclosure of `sqrt(q)` of width at most `2^-p`, by bisection on dyadic
/// points. Certified: `lo^2 <= q <= hi^2`.
pub fn sqrt_bounds(q: &Rat, p: u32) -> Result<Enclosure, Error> {
    if q.is_negative() {
        return Err(Error::OutOfDomain {
            value: q.clone(),
            domain: "[0, inf)",
        });
    }
    if q.is_zero() {
        return Ok(Enclosure::point(Rat::zero()));
    }
    let mut lo = Rat::zero();
    let mut hi = if q > &Rat::one() { q.clone() } else { Rat::one() };
    let target = pow2(-(p as i64));
    while &hi - &lo > target {
        let mid = (&lo + &hi) / int(2);
        if &mid * &mid <= *q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Enclosure::new(lo, hi))
}

/// Heron's iteration from 1: `H(q, 0) = 1`, `H(q, n+1) = (H + q/H) / 2`.
pub fn heron_rat(q: &Rat, n: usize) -> Rat {
    let mut h = Rat::one();
    for _ in 0..n {
        h = (&h + q / &h) / int(2);
    }
    h
}

/// Enclosure of `heron_rat(q, n) - sqrt(q)` derived from `sqrt_bounds(q, p)`.
pub fn heron_gap(q: &Rat, n: usize, p: u32) -> Result<Enclosure, Error> {
    let h = heron_rat(q, n);
    let root = sqrt_bounds(q, p)?;
    Ok(Enclosure::new(&h - root.hi, h - root.lo))
}

/// Exact check of `0 <= heron_rat(q, n) - sqrt(q) <= bound` by squaring.
pub fn heron_gap_within(q: &Rat, n: usize, bound: &Rat) -> bool {
    assert!(!q.is_negative());
    let h = heron_rat(q, n);
    // sqrt(q) <= h
    let above = !h.is_negative() && &h * &h >= *q;
    // h - bound <= sqrt(q)
    let shifted = &h - bound;
    let close = !shifted.is_positive() || &shifted * &shifted <= *q;
    above && close
}
