use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinate system a [`RatVec`] is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    SimpleCoroot,
    SimpleRoot,
    /// `ε`-coordinates of `R^{n+1}`; only meaningful for type `A_n`.
    Epsilon,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::SimpleCoroot => "simple-coroot",
            Basis::SimpleRoot => "simple-root",
            Basis::Epsilon => "epsilon",
        };
        f.write_str(s)
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(p, q))
    } else if let Some((int, dec)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if dec.is_empty() || !dec.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(dec.len() as u32);
        let frac_part: BigInt = dec.parse().map_err(|_| bad())?;
        let magnitude = int.abs() * &scale + frac_part;
        let numer = if neg { -magnitude } else { magnitude };
        Ok(BigRational::new(numer, scale))
    } else {
        let p: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(p))
    }
}

/// Exact rational vector tagged with its basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatVec {
    pub basis: Basis,
    pub coords: Vec<BigRational>,
}

impl RatVec {
    pub fn new(basis: Basis, coords: Vec<BigRational>) -> Self {
        Self { basis, coords }
    }

    pub fn zero(basis: Basis, dim: usize) -> Self {
        Self::new(basis, vec![BigRational::zero(); dim])
    }

    pub fn from_ints(basis: Basis, ints: &[i64]) -> Self {
        Self::new(basis, ints.iter().map(|&n| rat(n)).collect())
    }

    /// Shorthand for an integer vector in the simple-coroot basis.
    pub fn coroot(ints: &[i64]) -> Self {
        Self::from_ints(Basis::SimpleCoroot, ints)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.basis, self.coords.iter().map(|c| c * s).collect())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.numer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn check_same(&self, other: &RatVec) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Basis {
                expected: self.basis.to_string(),
                got: other.basis.to_string(),
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rational).collect()
    }

    pub fn parse(basis: Basis, s: &str) -> Result<Self> {
        let coords = split_list(s)
            .into_iter()
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(basis, coords))
    }
}

/// Splits `"a,b,c"` or `"a b c"` into trimmed non-empty items.
pub(crate) fn split_list(s: &str) -> Vec<&str> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect()
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_strings().join(","))
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        assert_eq!(self.basis, rhs.basis, "adding vectors in different bases");
        RatVec::new(
            self.basis,
            self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        assert_eq!(self.basis, rhs.basis, "subtracting vectors in different bases");
        RatVec::new(
            self.basis,
            self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec::new(self.basis, self.coords.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-7/4").unwrap(), frac(-7, 4));
        assert_eq!(parse_rational("0.5").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), frac(-1, 4));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn display_uses_p_over_q() {
        let v = RatVec::new(Basis::SimpleCoroot, vec![frac(3, 2), rat(-1), rat(0)]);
        assert_eq!(v.to_string(), "3/2,-1,0");
        assert_eq!(v.denominator(), BigInt::from(2));
    }
}
