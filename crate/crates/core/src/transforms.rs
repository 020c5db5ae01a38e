//! Digit-level stream operators: `x + 1`, `x - 1`, `2x`, `x/2 +- 1/4`,
//! negation, average and quotient.
//!
//! `plus_one`, `minus_one` and `double` are total and follow their rewrite
//! rules literally, also outside their value preconditions (they clamp).

use num::{BigInt, Signed, Zero};

use crate::digit::Digit::{self, NegOne, One, Zero as Nil};
use crate::error::StreamError;
use crate::stream::SdStream;

/// `x + 1`, correct when `x <= 0`.
///
/// `-1 v -> 1 v`, `0 v -> 1 (plus_one v)`, `1 v -> 1 1 1 ...`
pub fn plus_one(s: SdStream) -> SdStream {
    SdStream::defer(move || {
        let (d, v) = s.uncons()?;
        Ok(match d {
            NegOne => SdStream::cons(One, v),
            Nil => SdStream::cons(One, plus_one(v)),
            One => SdStream::constant(One),
        })
    })
}

/// `x - 1`, correct when `x >= 0`. Mirror image of [`plus_one`].
pub fn minus_one(s: SdStream) -> SdStream {
    SdStream::defer(move || {
        let (d, v) = s.uncons()?;
        Ok(match d {
            One => SdStream::cons(NegOne, v),
            Nil => SdStream::cons(NegOne, minus_one(v)),
            NegOne => SdStream::constant(NegOne),
        })
    })
}

/// `2x`, correct when `|x| <= 1/2`.
pub fn double(s: SdStream) -> SdStream {
    SdStream::defer(move || {
        let (d, u) = s.uncons()?;
        Ok(match d {
            NegOne => minus_one(u),
            Nil => u,
            One => plus_one(u),
        })
    })
}

/// `x/2 + 1/4`.
pub fn q_plus(s: SdStream) -> SdStream {
    SdStream::defer(move || {
        let (d, u) = s.uncons()?;
        let (a, b) = match d {
            NegOne => (Nil, Nil),
            Nil => (Nil, One),
            One => (One, Nil),
        };
        Ok(SdStream::with_prefix(&[a, b], u))
    })
}

/// `x/2 - 1/4`.
pub fn q_minus(s: SdStream) -> SdStream {
    SdStream::defer(move || {
        let (d, u) = s.uncons()?;
        let (a, b) = match d {
            NegOne => (NegOne, Nil),
            Nil => (Nil, NegOne),
            One => (Nil, Nil),
        };
        Ok(SdStream::with_prefix(&[a, b], u))
    })
}

/// Digitwise negation.
pub fn negate(s: SdStream) -> SdStream {
    if let Some(d) = s.as_constant() {
        return SdStream::constant(-d);
    }
    SdStream::defer(move || {
        let (d, v) = s.uncons()?;
        Ok(SdStream::cons(-d, negate(v)))
    })
}

/// Carry for [`average`]; always in `-2..=2`.
pub type Carry = i8;

/// One step of the average recursion. With state `(j, u, v)` denoting
/// `(j + val(u) + val(v)) / 4` and next input digits `a`, `b`, returns the
/// output digit `d` and the next carry `j'` with `2j + a + b = 4d + j'`.
pub fn average_step(carry: Carry, a: Digit, b: Digit) -> (Digit, Carry) {
    debug_assert!((-2..=2).contains(&carry));
    let k = 2 * carry + a.value() + b.value();
    let d = if k <= -3 {
        NegOne
    } else if k >= 3 {
        One
    } else {
        Nil
    };
    (d, k - 4 * d.value())
}

/// `(x + y) / 2`.
pub fn average(a: SdStream, b: SdStream) -> SdStream {
    SdStream::defer(move || {
        let (p, u) = a.uncons()?;
        let (q, v) = b.uncons()?;
        Ok(average_carry(p.value() + q.value(), u, v))
    })
}

fn average_carry(carry: Carry, u: SdStream, v: SdStream) -> SdStream {
    SdStream::defer(move || {
        let (a, u) = u.uncons()?;
        let (b, v) = v.uncons()?;
        let (d, carry) = average_step(carry, a, b);
        Ok(SdStream::cons(d, average_carry(carry, u, v)))
    })
}

/// Per-digit limit on operand refinement in [`divide`].
pub const DEFAULT_DIVISION_ROUNDS: usize = 64;

/// `x / y`, correct when `|x| <= y` and `y >= 1/4`.
///
/// Each output digit is chosen from rational enclosures of the residual
/// `z = 2^n x/y - E` (with `E` the integer formed by the `n` digits emitted
/// so far), reading one more digit of both operands per refinement round.
/// Fails with [`StreamError::DivisionStalled`] if no digit is decidable
/// within [`DEFAULT_DIVISION_ROUNDS`] rounds.
pub fn divide(a: SdStream, b: SdStream) -> SdStream {
    divide_with(a, b, DEFAULT_DIVISION_ROUNDS)
}

pub fn divide_with(a: SdStream, b: SdStream, max_rounds: usize) -> SdStream {
    division_digit(DivState {
        a,
        b,
        read: 0,
        num: BigInt::zero(),
        den: BigInt::zero(),
        emitted: 0,
        quotient: BigInt::zero(),
        max_rounds,
    })
}

struct DivState {
    // Unread operand tails.
    a: SdStream,
    b: SdStream,
    // Digits read from each operand, and their prefix values times 2^read.
    read: usize,
    num: BigInt,
    den: BigInt,
    // Digits emitted, and their value times 2^emitted.
    emitted: usize,
    quotient: BigInt,
    max_rounds: usize,
}

/// Residual bounds the digit choice is made from. All quantities are scaled
/// by `2^read`: the dividend lies in `num +- 1`, the divisor in `den +- 1`,
/// and `z = (2^emitted x - quotient y) / y`.
#[derive(Debug)]
struct Residual {
    lo: BigInt,
    hi: BigInt,
    den_lo: BigInt,
}

impl Residual {
    fn new(s: &DivState) -> Option<Residual> {
        let den_lo: BigInt = &s.den - 1;
        if !den_lo.is_positive() {
            return None;
        }
        let centre = (&s.num << s.emitted) - &s.quotient * &s.den;
        let radius = (BigInt::from(1) << s.emitted) + s.quotient.abs();
        Some(Residual {
            lo: &centre - &radius,
            hi: centre + radius,
            den_lo,
        })
    }

    // The residual satisfies z >= 0 / z <= 0 / |z| <= 1/2. Since the true
    // residual lies in [-1, 1], these are the conditions for 1 / -1 / 0.
    // A digit of known sign is preferred over 0.
    fn nonneg(&self) -> bool {
        !self.lo.is_negative()
    }

    fn nonpos(&self) -> bool {
        !self.hi.is_positive()
    }

    fn within_half(&self) -> bool {
        let upper = !self.hi.is_positive() || (&self.hi << 1u32) <= self.den_lo;
        let lower = !self.lo.is_negative() || -(&self.lo << 1u32) <= self.den_lo;
        upper && lower
    }

    fn choose(&self) -> Option<Digit> {
        if self.nonneg() {
            Some(One)
        } else if self.nonpos() {
            Some(NegOne)
        } else if self.within_half() {
            Some(Nil)
        } else {
            None
        }
    }
}

fn division_digit(mut st: DivState) -> SdStream {
    SdStream::defer(move || {
        let mut rounds = 0;
        let d = loop {
            if let Some(d) = Residual::new(&st).and_then(|r| r.choose()) {
                break d;
            }
            if rounds == st.max_rounds {
                return Err(StreamError::DivisionStalled {
                    digit: st.emitted,
                    rounds,
                });
            }
            rounds += 1;
            let (x, a) = st.a.uncons()?;
            let (y, b) = st.b.uncons()?;
            st.a = a;
            st.b = b;
            st.num = (st.num << 1u32) + x.value();
            st.den = (st.den << 1u32) + y.value();
            st.read += 1;
        };
        st.quotient = (st.quotient << 1u32) + d.value();
        st.emitted += 1;
        Ok(SdStream::cons(d, division_digit(st)))
    })
}
