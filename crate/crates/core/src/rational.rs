//! Finite exact rationals with the same string form as slopes.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::slope::Slope;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Rational> {
        if den == 0 {
            return Err(Error::InvalidInput(format!("zero denominator in {num}/{den}")));
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    pub fn integer(n: i64) -> Rational {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// The finite slope with this value.
    pub fn to_slope(self) -> Slope {
        Slope::new(self.numer(), self.denom()).expect("nonzero denominator")
    }

    /// Value of a finite slope.
    pub fn from_slope(s: Slope) -> Option<Rational> {
        (!s.is_infinite()).then(|| Rational(Ratio::new(s.numerator(), s.denominator())))
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({self})")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let slope: Slope = s.parse()?;
        Rational::from_slope(slope).ok_or_else(|| Error::Parse(format!("{s:?} is not a finite rational")))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Rational, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_like_slopes() {
        assert_eq!(Rational::new(-2, 6).unwrap().to_string(), "-1/3");
        assert_eq!(Rational::integer(7).to_string(), "7");
        assert_eq!("-14/4".parse::<Rational>().unwrap(), Rational::new(-7, 2).unwrap());
        assert!("inf".parse::<Rational>().is_err());
        assert!(Rational::new(1, 0).is_err());
    }
}
