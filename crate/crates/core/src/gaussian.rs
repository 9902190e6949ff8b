//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -&self.im / &norm))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True when the first nonzero component is negative.
    pub fn is_negative_canonical(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

fn parse_rational(t: &str) -> Result<BigRational> {
    let t = t.trim();
    let bad = |e: String| Error::Parse(format!("bad rational {t:?}: {e}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|e| bad(format!("{e}")))?;
        let d: BigInt = d.trim().parse().map_err(|e| bad(format!("{e}")))?;
        if d.is_zero() {
            return Err(bad("zero denominator".into()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Ok(n) = t.parse::<BigInt>() {
        return Ok(BigRational::from_integer(n));
    }
    // finite decimal such as -0.125
    let (sign, digits) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = digits
        .split_once('.')
        .ok_or_else(|| bad("not a number".into()))?;
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
        || (int_part.is_empty() && frac_part.is_empty())
    {
        return Err(bad("not a number".into()));
    }
    let all: BigInt = format!("{int_part}{frac_part}0")
        .trim_start_matches('0')
        .parse()
        .unwrap_or_default();
    let den = BigInt::from(10).pow(frac_part.len() as u32 + 1);
    Ok(BigRational::new(all * sign, den))
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `p/q`, integers, finite decimals, and `re:im` pairs of those.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((re, im)) => Ok(Self::new(parse_rational(re)?, parse_rational(im)?)),
            None => Ok(Self::from_rational(parse_rational(s)?)),
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}:{}", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("1/2".parse::<GaussianRational>().unwrap(), GaussianRational::ratio(1, 2));
        assert_eq!("-3".parse::<GaussianRational>().unwrap(), GaussianRational::from_integer(-3));
        assert_eq!("0.25".parse::<GaussianRational>().unwrap(), GaussianRational::ratio(1, 4));
        assert_eq!("-1.5".parse::<GaussianRational>().unwrap(), GaussianRational::ratio(-3, 2));
        let z: GaussianRational = "0:1".parse().unwrap();
        assert_eq!(z.mul(&z), GaussianRational::from_integer(-1));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert_eq!(z.to_string(), "0:1");
    }

    #[test]
    fn arithmetic() {
        let a: GaussianRational = "1/2:3".parse().unwrap();
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        assert!(GaussianRational::zero().inv().is_none());
    }
}
