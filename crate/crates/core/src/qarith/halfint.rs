use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact half-integer, stored as twice its value.
///
/// Used for edge colors and shadow states; all arithmetic is exact integer
/// arithmetic on the doubled representation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt { twice: 2 * v }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// The integer value, or an error for a genuine half-integer.
    pub fn as_int(self) -> Result<i64> {
        if self.is_integer() {
            Ok(self.twice / 2)
        } else {
            Err(Error::domain(format!("{self} is not an integer")))
        }
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// Parses "2", "5/2", "-1/2" or a decimal with fractional part 0 or .5.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(Error::parse(format!(
                    "half-integer denominator must be 2 in `{s}`"
                )));
            }
            let n: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad half-integer `{s}`")))?;
            return Ok(HalfInt::from_twice(n));
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(HalfInt::from_int(n));
        }
        if let Ok(x) = s.parse::<f64>() {
            let twice = 2.0 * x;
            if (twice - twice.round()).abs() < 1e-9 {
                return Ok(HalfInt::from_twice(twice.round() as i64));
            }
        }
        Err(Error::parse(format!("bad half-integer `{s}`")))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Triangle inequalities plus the integrality condition on a triple of colors.
pub fn admissible_triple(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (ta, tb, tc) = (a.twice(), b.twice(), c.twice());
    ta >= 0
        && tb >= 0
        && tc >= 0
        && ta + tb >= tc
        && tb + tc >= ta
        && tc + ta >= tb
        && (ta + tb + tc) % 2 == 0
}
