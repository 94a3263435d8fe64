use std::fmt;
use std::ops::{Mul, MulAssign};
use std::str::FromStr;

use crate::Error;

/// An element of {+1, -1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    /// The exponent bit: 0 for +1, 1 for -1.
    pub fn bit(self) -> u64 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn pow(self, n: u64) -> Sign {
        Sign::from_parity(self.is_minus() && n % 2 == 1)
    }

    pub fn product<I: IntoIterator<Item = Sign>>(signs: I) -> Sign {
        signs.into_iter().fold(Sign::Plus, |acc, s| acc * s)
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign, Error> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("not a sign: {other:?}"))),
        }
    }
}

/// A fourth root of unity `i^k`, stored by its exponent mod 4.
///
/// Root numbers of selfdual pieces whose determinant is odd at -1 square to -1,
/// so table entries live here; characters built from them are real.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FourthRoot(u8);

impl FourthRoot {
    pub const ONE: FourthRoot = FourthRoot(0);
    pub const I: FourthRoot = FourthRoot(1);
    pub const MINUS_ONE: FourthRoot = FourthRoot(2);
    pub const MINUS_I: FourthRoot = FourthRoot(3);

    pub fn from_exponent(k: u64) -> FourthRoot {
        FourthRoot((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn pow(self, n: u64) -> FourthRoot {
        FourthRoot::from_exponent((self.0 as u64) * (n % 4))
    }

    pub fn square(self) -> FourthRoot {
        self.pow(2)
    }

    pub fn inverse(self) -> FourthRoot {
        FourthRoot((4 - self.0) % 4)
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn to_sign(self) -> Option<Sign> {
        match self.0 {
            0 => Some(Sign::Plus),
            2 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn product<I: IntoIterator<Item = FourthRoot>>(roots: I) -> FourthRoot {
        roots.into_iter().fold(FourthRoot::ONE, |acc, r| acc * r)
    }
}

impl From<Sign> for FourthRoot {
    fn from(s: Sign) -> FourthRoot {
        match s {
            Sign::Plus => FourthRoot::ONE,
            Sign::Minus => FourthRoot::MINUS_ONE,
        }
    }
}

impl Mul for FourthRoot {
    type Output = FourthRoot;
    fn mul(self, rhs: FourthRoot) -> FourthRoot {
        FourthRoot((self.0 + rhs.0) % 4)
    }
}

impl Mul<Sign> for FourthRoot {
    type Output = FourthRoot;
    fn mul(self, rhs: Sign) -> FourthRoot {
        self * FourthRoot::from(rhs)
    }
}

impl MulAssign for FourthRoot {
    fn mul_assign(&mut self, rhs: FourthRoot) {
        *self = *self * rhs;
    }
}

impl fmt::Display for FourthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

impl FromStr for FourthRoot {
    type Err = Error;
    fn from_str(s: &str) -> Result<FourthRoot, Error> {
        match s.trim() {
            "+1" | "1" => Ok(FourthRoot::ONE),
            "-1" => Ok(FourthRoot::MINUS_ONE),
            "+i" | "i" => Ok(FourthRoot::I),
            "-i" => Ok(FourthRoot::MINUS_I),
            other => Err(Error::Parse(format!("not a fourth root of unity: {other:?}"))),
        }
    }
}

/// Sign of a tensor product of two selfdual (or two conjugate-dual) pieces.
pub fn tensor_sign(b1: Sign, b2: Sign) -> Sign {
    b1 * b2
}

/// Sign of an induced representation; induction preserves it.
pub fn induce_sign(b: Sign) -> Sign {
    b
}
