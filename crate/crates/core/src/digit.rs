use std::fmt;
use std::ops::Neg;

/// A signed binary digit: -1, 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(i8)]
pub enum Digit {
    NegOne = -1,
    Zero = 0,
    One = 1,
}

impl Digit {
    pub const ALL: [Digit; 3] = [Digit::NegOne, Digit::Zero, Digit::One];

    #[inline]
    pub fn value(self) -> i8 {
        self as i8
    }

    /// Digit with the given integer value, if it is one of -1, 0, 1.
    pub fn from_value(v: i64) -> Option<Digit> {
        match v {
            -1 => Some(Digit::NegOne),
            0 => Some(Digit::Zero),
            1 => Some(Digit::One),
            _ => None,
        }
    }
}

impl Neg for Digit {
    type Output = Digit;

    fn neg(self) -> Digit {
        match self {
            Digit::NegOne => Digit::One,
            Digit::Zero => Digit::Zero,
            Digit::One => Digit::NegOne,
        }
    }
}

impl TryFrom<i64> for Digit {
    type Error = i64;

    fn try_from(v: i64) -> Result<Self, i64> {
        Digit::from_value(v).ok_or(v)
    }
}

impl From<Digit> for i64 {
    fn from(d: Digit) -> i64 {
        d.value() as i64
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Digit::NegOne => "-1",
            Digit::Zero => "0",
            Digit::One => "+1",
        })
    }
}
