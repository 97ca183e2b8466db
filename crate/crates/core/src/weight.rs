//! Exact rational weights in the fundamental-weight basis.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-2/3"` or a decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
        };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let scale = num::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let mut value = Rational::from_integer(int_part.abs()) + Rational::new(frac_part, scale);
        if neg {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(Rational::from_integer(n))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A weight written in the basis of fundamental weights.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight { coords: coords.iter().map(|&c| rat(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![Rational::zero(); rank] }
    }

    /// The `i`-th fundamental weight.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i] = Rational::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if every coordinate is integral and fits in `i64`.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| if c.is_integer() { c.numer().to_i64() } else { None })
            .collect()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Weight {
        Weight { coords: self.coords.iter().map(|a| a * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `"(1,-2)"`, `"1,-2"`, `"[1, -2]"` and rational entries such as `"1/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if t.trim().is_empty() {
            return Ok(Weight { coords: Vec::new() });
        }
        let coords = t.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Ok(Weight { coords })
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight::from_ints(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-2/4").unwrap(), rat_frac(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat_frac(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat_frac(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn weight_roundtrips_through_display() {
        let w: Weight = "(1,-2,1/3)".parse().unwrap();
        assert_eq!(w.to_string(), "(1,-2,1/3)");
        assert!(!w.is_integral());
        let v: Weight = "[3, 0]".parse().unwrap();
        assert_eq!(v.to_ints(), Some(vec![3, 0]));
    }
}
