//! Text forms: digit lists as `+1 0 -1`, and decimal approximations.

use num::{BigInt, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::digit::Digit;
use crate::error::StreamError;
use crate::oracle::{prefix_value, Rat};
use crate::stream::SdStream;

/// Space-separated `+1` / `0` / `-1` tokens.
pub fn format_digits(ds: &[Digit]) -> String {
    let tokens: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    tokens.join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid digit {token:?} at position {position}")]
pub struct ParseDigitsError {
    pub token: String,
    /// Zero-based token index.
    pub position: usize,
}

/// Inverse of [`format_digits`]; also accepts `1` for `+1`.
pub fn parse_digits(text: &str) -> Result<Vec<Digit>, ParseDigitsError> {
    text.split_whitespace()
        .enumerate()
        .map(|(position, token)| match token {
            "+1" | "1" => Ok(Digit::One),
            "0" => Ok(Digit::Zero),
            "-1" => Ok(Digit::NegOne),
            _ => Err(ParseDigitsError {
                token: token.to_string(),
                position,
            }),
        })
        .collect()
}

/// Smallest `k` with `10^k >= 2^p`, i.e. `ceil(p log10 2)`.
pub fn decimal_places(p: u32) -> usize {
    let target = BigInt::one() << p;
    let mut pow = BigInt::one();
    let mut k = 0;
    while pow < target {
        pow *= 10;
        k += 1;
    }
    k
}

/// `q` rounded half away from zero to `places` decimals.
pub fn format_decimal(q: &Rat, places: usize) -> String {
    let scale = num::pow(BigInt::from(10), places);
    let scaled = q.abs() * Rat::from_integer(scale.clone());
    let mut units = scaled.floor().to_integer();
    if (scaled - Rat::from_integer(units.clone())) * Rat::from_integer(2.into()) >= Rat::one() {
        units += 1;
    }
    let (int_part, frac_part) = units.div_rem(&scale);
    let sign = if q.is_negative() && !units.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
}

/// Decimal value of the stream to within `2^-p`, annotated with the bound,
/// e.g. `0.7071 ± 2^-10`.
///
/// Renders `prefix_value(s, p + 2)` to `ceil(p log10 2)` places; the two
/// error sources add up to at most `2^-(p+2) + 2^-(p+1) < 2^-p`.
pub fn decimal_approx(s: &SdStream, p: u32) -> Result<String, StreamError> {
    let v = prefix_value(s, p as usize + 2)?;
    Ok(format!(
        "{} ± 2^-{p}",
        format_decimal(&v, decimal_places(p))
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{embed, int, pow2, rat};
    use proptest::prelude::*;
    use std::str::FromStr;
    use Digit::{NegOne as M, One as P, Zero as Z};

    #[test]
    fn format_examples() {
        assert_eq!(format_digits(&[P, P, Z, M]), "+1 +1 0 -1");
        assert_eq!(format_digits(&[]), "");
        assert_eq!(format_digits(&[Z, Z, Z]), "0 0 0");
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_digits("+1 0 -1").unwrap(), vec![P, Z, M]);
        assert_eq!(parse_digits("1 1").unwrap(), vec![P, P]);
        assert_eq!(parse_digits("  ").unwrap(), vec![]);
        assert_eq!(
            parse_digits("0 2").unwrap_err(),
            ParseDigitsError {
                token: "2".into(),
                position: 1
            }
        );
        assert!(parse_digits("+1 -0").is_err());
    }

    #[test]
    fn places() {
        assert_eq!(decimal_places(10), 4);
        assert_eq!(decimal_places(1), 1);
        assert_eq!(decimal_places(0), 0);
        assert_eq!(decimal_places(20), 7);
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&rat(1, 2), 3), "0.500");
        assert_eq!(format_decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(format_decimal(&rat(-1, 1000), 2), "0.00");
        assert_eq!(format_decimal(&int(1), 2), "1.00");
        assert_eq!(format_decimal(&rat(-2, 3), 0), "-1");
    }

    #[test]
    fn decimal_approx_examples() {
        assert_eq!(
            decimal_approx(&SdStream::zeros(), 10).unwrap(),
            "0.0000 ± 2^-10"
        );
        let text = decimal_approx(&embed(&rat(1, 2)).unwrap(), 10).unwrap();
        assert_eq!(text, "0.5000 ± 2^-10");
    }

    fn rendered_value(text: &str) -> Rat {
        let number = text.split(' ').next().unwrap();
        let (sign, body) = match number.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, number),
        };
        let (i, f) = body.split_once('.').unwrap_or((body, ""));
        let digits = BigInt::from_str(&format!("{i}{f}")).unwrap();
        Rat::new(digits * sign, num::pow(BigInt::from(10), f.len()))
    }

    proptest! {
        #[test]
        fn digits_round_trip(ds in prop::collection::vec(prop::sample::select(Digit::ALL.to_vec()), 0..=64)) {
            prop_assert_eq!(parse_digits(&format_digits(&ds)).unwrap(), ds);
        }

        #[test]
        fn decimal_bound_is_honest(num in -1000i64..=1000, p in 1u32..=40) {
            let q = rat(num, 1000);
            let text = decimal_approx(&embed(&q).unwrap(), p).unwrap();
            let suffix = format!(" ± 2^-{}", p);
            prop_assert!(text.ends_with(&suffix));
            let err = num::Signed::abs(&(rendered_value(&text) - &q));
            prop_assert!(err <= pow2(-(p as i64)), "{} vs {}", text, q);
        }
    }
}
