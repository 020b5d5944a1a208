//! Exact positive fractions for circular parameters and rates.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced positive fraction `num/den`. Serialized as the string `"num/den"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rational(Ratio<u64>);

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidParameter(format!(
                "{num}/{den} is not a positive fraction"
            )));
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    pub fn integer(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn num(&self) -> u64 {
        *self.0.numer()
    }

    pub fn den(&self) -> u64 {
        *self.0.denom()
    }

    pub fn floor(&self) -> u64 {
        self.num() / self.den()
    }

    pub fn ceil(&self) -> u64 {
        self.num().div_ceil(self.den())
    }

    pub fn is_integer(&self) -> bool {
        self.den() == 1
    }

    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }

    /// Exact comparison of `self^2` against the integer `m`.
    pub fn square_cmp(&self, m: u64) -> std::cmp::Ordering {
        let lhs = self.num() as u128 * self.num() as u128;
        let rhs = m as u128 * self.den() as u128 * self.den() as u128;
        lhs.cmp(&rhs)
    }
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse fraction {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num = num.parse().map_err(|_| bad())?;
        let den = den.parse().map_err(|_| bad())?;
        Rational::new(num, den)
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn reduces_on_construction() {
        assert_eq!(r(9, 3), r(3, 1));
        assert_eq!(r(10, 4).to_string(), "5/2");
        assert_eq!(r(3, 1).to_string(), "3/1");
    }

    #[test]
    fn rejects_non_positive() {
        assert!(Rational::new(0, 3).is_err());
        assert!(Rational::new(3, 0).is_err());
    }

    #[test]
    fn floor_ceil() {
        assert_eq!((r(7, 3).floor(), r(7, 3).ceil()), (2, 3));
        assert_eq!((r(4, 1).floor(), r(4, 1).ceil()), (4, 4));
    }

    #[test]
    fn ordering_is_exact() {
        assert!(r(7, 3) < r(5, 2));
        assert!(r(9, 4) < r(7, 3));
        assert_eq!(r(5, 2) * r(2, 1), r(5, 1));
        assert_eq!(r(5, 2) + r(1, 2), r(3, 1));
    }

    #[test]
    fn square_comparison() {
        use std::cmp::Ordering::*;
        assert_eq!(r(2, 1).square_cmp(4), Equal);
        assert_eq!(r(5, 2).square_cmp(6), Greater);
        assert_eq!(r(7, 3).square_cmp(6), Less);
    }

    #[test]
    fn parses_and_serializes_as_string() {
        assert_eq!("5/2".parse::<Rational>().unwrap(), r(5, 2));
        assert_eq!("3".parse::<Rational>().unwrap(), r(3, 1));
        assert!("x/2".parse::<Rational>().is_err());
        assert_eq!(serde_json::to_string(&r(9, 4)).unwrap(), "\"9/4\"");
        assert_eq!(serde_json::from_str::<Rational>("\"6/4\"").unwrap(), r(3, 2));
    }
}
