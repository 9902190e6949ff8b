//! Bernoulli polynomials: dense ±1 coefficients in one or several variables.
//!
//! Multivariate exponent vectors are stored in graded lexicographic order:
//! ascending total degree, ties broken by ascending lexicographic comparison
//! of the exponent vectors. For `d = 2, n = 2` the order is
//! `(0,0) (0,1) (1,0) (0,2) (1,1) (2,0)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rng::{Seed, SignStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '−' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Univariate polynomial `Σ_{i=0}^{n} ε_i x^i` with `ε_i = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BernoulliPolyUni {
    coeffs: Vec<Sign>,
}

impl BernoulliPolyUni {
    pub fn from_signs(coeffs: Vec<Sign>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("a Bernoulli polynomial needs at least one coefficient");
        }
        Ok(Self { coeffs })
    }

    /// Builds the polynomial whose coefficient `i` is bit `i` of `mask`
    /// (`1 ↦ +1`). Used by the exhaustive enumerators.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n < 64);
        let coeffs = (0..=n)
            .map(|i| if (mask >> i) & 1 == 1 { Sign::Plus } else { Sign::Minus })
            .collect();
        Self { coeffs }
    }

    pub fn sample(n: usize, seed: Seed) -> Self {
        Self::sample_from(&mut seed.stream(), n)
    }

    pub fn sample_from(stream: &mut SignStream, n: usize) -> Self {
        let coeffs = (0..=n).map(|_| stream.next_sign()).collect();
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Sign] {
        &self.coeffs
    }

    pub fn coeff_values(&self) -> Vec<i64> {
        self.coeffs.iter().map(|s| s.value()).collect()
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, s| acc * x + s.value() as f64)
    }

    /// `(P(1), P(-1))` as exact integers.
    pub fn eval_at_pm1(&self) -> (i64, i64) {
        let mut at_one = 0;
        let mut at_minus_one = 0;
        for (i, s) in self.coeffs.iter().enumerate() {
            let v = s.value();
            at_one += v;
            at_minus_one += if i % 2 == 0 { v } else { -v };
        }
        (at_one, at_minus_one)
    }

    pub fn negated(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|s| s.negate()).collect(),
        }
    }

    pub fn to_sign_string(&self) -> String {
        self.coeffs.iter().map(|s| s.as_char()).collect()
    }
}

impl fmt::Display for BernoulliPolyUni {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sign_string())
    }
}

impl FromStr for BernoulliPolyUni {
    type Err = Error;

    /// Parses the `+-+-` shorthand, lowest degree first. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::Parse(format!("bad sign {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_signs(coeffs)
    }
}

/// All exponent vectors `j ∈ ℤ₊^d` with `|j|₁ ≤ n`, graded lexicographic order.
pub fn graded_lex_monomials(d: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=n {
        let mut current = vec![0u32; d];
        fill_degree(&mut out, &mut current, 0, total as u32);
    }
    out
}

fn fill_degree(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, left: u32) {
    let d = current.len();
    if pos + 1 == d {
        current[pos] = left;
        out.push(current.clone());
        return;
    }
    for v in 0..=left {
        current[pos] = v;
        fill_degree(out, current, pos + 1, left - v);
    }
}

/// `C(n + d, d)`, the number of monomials of total degree at most `n`.
pub fn monomial_count(d: usize, n: usize) -> u64 {
    let mut acc: u128 = 1;
    for k in 1..=d as u128 {
        acc = acc * (n as u128 + k) / k;
    }
    acc as u64
}

/// Polynomial in `d` variables with one ±1 coefficient per monomial of
/// total degree at most `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliPolyMulti {
    d: usize,
    n: usize,
    exponents: Vec<Vec<u32>>,
    signs: Vec<Sign>,
}

impl BernoulliPolyMulti {
    pub fn from_signs(d: usize, n: usize, signs: Vec<Sign>) -> Result<Self> {
        if d == 0 {
            return invalid("number of variables must be at least 1");
        }
        let exponents = graded_lex_monomials(d, n);
        if exponents.len() != signs.len() {
            return invalid(format!(
                "expected {} coefficients for d={d}, n={n}, got {}",
                exponents.len(),
                signs.len()
            ));
        }
        Ok(Self {
            d,
            n,
            exponents,
            signs,
        })
    }

    pub fn sample(d: usize, n: usize, seed: Seed) -> Result<Self> {
        Self::sample_from(&mut seed.stream(), d, n)
    }

    pub fn sample_from(stream: &mut SignStream, d: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return invalid("number of variables must be at least 1");
        }
        let exponents = graded_lex_monomials(d, n);
        let signs = exponents.iter().map(|_| stream.next_sign()).collect();
        Ok(Self {
            d,
            n,
            exponents,
            signs,
        })
    }

    pub fn vars(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Sign)> + '_ {
        self.exponents
            .iter()
            .map(|e| e.as_slice())
            .zip(self.signs.iter().copied())
    }

    pub fn coeff(&self, exponent: &[u32]) -> Option<Sign> {
        self.exponents
            .iter()
            .position(|e| e.as_slice() == exponent)
            .map(|i| self.signs[i])
    }

    pub fn negated(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| s.negate()).collect(),
            ..self.clone()
        }
    }

    pub fn eval(&self, x: &ComplexPoint) -> Result<Complex64> {
        if x.dim() != self.d {
            return invalid(format!(
                "point has {} coordinates, polynomial has {} variables",
                x.dim(),
                self.d
            ));
        }
        // powers[i][k] = x_i^k
        let powers: Vec<Vec<Complex64>> = x
            .coords()
            .iter()
            .map(|&xi| {
                let mut p = Vec::with_capacity(self.n + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=self.n {
                    p.push(acc);
                    acc *= xi;
                }
                p
            })
            .collect();
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, s) in self.terms() {
            let mono = e
                .iter()
                .enumerate()
                .fold(Complex64::new(1.0, 0.0), |acc, (i, &k)| acc * powers[i][k as usize]);
            sum += mono * s.value() as f64;
        }
        Ok(sum)
    }

    /// Canonical text form: a `d n` line, then one `e_1 ... e_d sign` line per
    /// monomial in graded lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.d, self.n);
        for (e, s) in self.terms() {
            for k in e {
                out.push_str(&k.to_string());
                out.push(' ');
            }
            out.push(s.as_char());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty polynomial text".into()))?;
        let mut it = header.split_whitespace();
        let parse_usize = |t: Option<&str>| -> Result<usize> {
            t.ok_or_else(|| Error::Parse("short header".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("header: {e}")))
        };
        let d = parse_usize(it.next())?;
        let n = parse_usize(it.next())?;
        let expected = graded_lex_monomials(d, n);
        let mut signs = Vec::with_capacity(expected.len());
        for (line, want) in lines.zip(expected.iter()) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != d + 1 {
                return Err(Error::Parse(format!("bad term line {line:?}")));
            }
            let exps = toks[..d]
                .iter()
                .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if &exps != want {
                return Err(Error::Parse(format!(
                    "terms out of graded lexicographic order at {line:?}"
                )));
            }
            let sign = toks[d]
                .chars()
                .next()
                .and_then(Sign::from_char)
                .ok_or_else(|| Error::Parse(format!("bad sign in {line:?}")))?;
            signs.push(sign);
        }
        Self::from_signs(d, n, signs)
    }
}

/// A point of `ℂ^d` with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    coords: Vec<Complex64>,
}

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return invalid("point coordinates must be finite");
        }
        Ok(Self { coords })
    }

    pub fn real(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }
}
