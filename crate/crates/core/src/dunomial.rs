//! Dunomials: two-term relations `x^α ± x^β = 0` between monomials.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gaussian::GaussianRational;
use crate::poly::{graded_lex_monomials, ComplexPoint, Sign};

pub const DEFAULT_TOL: f64 = 1e-9;

/// The relation `x^alpha + sign · x^beta = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dunomial {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub sign: Sign,
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Graded-lex comparison: total degree first, then lexicographic.
fn grlex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    total(a).cmp(&total(b)).then_with(|| a.cmp(b))
}

impl Dunomial {
    pub fn new(alpha: Vec<u32>, beta: Vec<u32>, sign: Sign) -> Result<Self> {
        if alpha.len() != beta.len() || alpha.is_empty() {
            return invalid("dunomial exponents must have equal nonzero length");
        }
        if alpha == beta {
            return invalid("dunomial exponents must differ");
        }
        Ok(Self { alpha, beta, sign })
    }

    pub fn vars(&self) -> usize {
        self.alpha.len()
    }

    /// `max(|α|₁, |β|₁)`
    pub fn degree(&self) -> u32 {
        total(&self.alpha).max(total(&self.beta))
    }

    /// `Σ |α_i − β_i|`
    pub fn order(&self) -> u32 {
        self.alpha
            .iter()
            .zip(&self.beta)
            .map(|(&a, &b)| a.abs_diff(b))
            .sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.alpha.iter().zip(&self.beta).all(|(&a, &b)| a.min(b) == 0)
    }

    /// Cancels the common monomial factor. Same order, same zero set off
    /// the coordinate hyperplanes.
    pub fn reduce(&self) -> Dunomial {
        let (alpha, beta) = self
            .alpha
            .iter()
            .zip(&self.beta)
            .map(|(&a, &b)| (a - a.min(b), b - a.min(b)))
            .unzip();
        Dunomial {
            alpha,
            beta,
            sign: self.sign,
        }
    }

    /// Swaps sides so that `alpha ≥ beta` in graded-lex order.
    pub fn canonical(&self) -> Dunomial {
        if grlex_cmp(&self.alpha, &self.beta).is_lt() {
            Dunomial {
                alpha: self.beta.clone(),
                beta: self.alpha.clone(),
                sign: self.sign,
            }
        } else {
            self.clone()
        }
    }

    /// `x^α + sign · x^β` at `x`.
    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mono = |e: &[u32]| {
            e.iter()
                .zip(x)
                .fold(Complex64::new(1.0, 0.0), |acc, (&k, z)| acc * z.powu(k))
        };
        mono(&self.alpha) + mono(&self.beta) * self.sign.value() as f64
    }

    pub fn eval_exact(&self, x: &[GaussianRational]) -> GaussianRational {
        let a = monomial_exact(&self.alpha, x);
        let b = monomial_exact(&self.beta, x);
        match self.sign {
            Sign::Plus => a.add(&b),
            Sign::Minus => a.add(&b.neg()),
        }
    }
}

impl fmt::Display for Dunomial {
    /// `a1,a2 +|- b1,b2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |e: &[u32]| e.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{} {} {}", join(&self.alpha), self.sign.as_char(), join(&self.beta))
    }
}

fn monomial_exact(e: &[u32], x: &[GaussianRational]) -> GaussianRational {
    e.iter()
        .zip(x)
        .fold(GaussianRational::one(), |acc, (&k, z)| acc.mul(&z.pow(k)))
}

/// Every dunomial of degree ≤ n in d variables, each unordered exponent
/// pair once in canonical orientation, with both signs.
pub fn enumerate_dunomials(d: usize, n: usize) -> Result<Vec<Dunomial>> {
    if d == 0 || n == 0 {
        return invalid("enumerate_dunomials needs d ≥ 1 and n ≥ 1");
    }
    let monos = graded_lex_monomials(d, n);
    let mut out = Vec::with_capacity(monos.len() * (monos.len() - 1));
    for (i, a) in monos.iter().enumerate() {
        for b in &monos[..i] {
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(Dunomial {
                    alpha: a.clone(),
                    beta: b.clone(),
                    sign,
                });
            }
        }
    }
    Ok(out)
}

/// Integer vectors in ℤ^d with `|δ|₁ = r`.
fn l1_sphere(d: usize, r: u32) -> Vec<Vec<i64>> {
    fn rec(d: usize, r: u32, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if d == 1 {
            prefix.push(r as i64);
            out.push(prefix.clone());
            prefix.pop();
            if r > 0 {
                prefix.push(-(r as i64));
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for k in 0..=r {
            for v in if k == 0 { vec![0] } else { vec![k as i64, -(k as i64)] } {
                prefix.push(v);
                rec(d - 1, r - k, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, r, &mut Vec::with_capacity(d), &mut out);
    }
    out
}

fn split_delta(delta: &[i64]) -> (Vec<u32>, Vec<u32>) {
    delta
        .iter()
        .map(|&v| (v.max(0) as u32, (-v).max(0) as u32))
        .unzip()
}

/// Reduced dunomials of order exactly `r`: one per difference vector `δ` up
/// to `δ ↔ −δ`, with both signs. At `d = 2` there are `4r` of them.
pub fn enumerate_reduced_by_order(d: usize, r: u32) -> Result<Vec<Dunomial>> {
    if d == 0 || r == 0 {
        return invalid("enumerate_reduced_by_order needs d ≥ 1 and r ≥ 1");
    }
    let mut out = Vec::new();
    for delta in l1_sphere(d, r) {
        let (alpha, beta) = split_delta(&delta);
        if grlex_cmp(&alpha, &beta).is_lt() {
            continue;
        }
        for sign in [Sign::Plus, Sign::Minus] {
            out.push(Dunomial {
                alpha: alpha.clone(),
                beta: beta.clone(),
                sign,
            });
        }
    }
    Ok(out)
}

/// How vanishing is decided.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DunomialMode {
    /// `|x^α ± x^β| ≤ tol · max(|x^α|, |x^β|)`, monomials in log space.
    Numeric { tol: f64 },
    /// Exact comparison; needs Gaussian-rational coordinates.
    ExactRational,
}

/// A point given either exactly or as floating-point coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum DunomialPoint {
    Exact(Vec<GaussianRational>),
    Approx(ComplexPoint),
}

impl DunomialPoint {
    pub fn dim(&self) -> usize {
        match self {
            DunomialPoint::Exact(v) => v.len(),
            DunomialPoint::Approx(p) => p.dim(),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            DunomialPoint::Exact(v) => v.iter().map(GaussianRational::to_complex).collect(),
            DunomialPoint::Approx(p) => p.coords().to_vec(),
        }
    }

    fn check(&self, mode: DunomialMode) -> Result<()> {
        if self.dim() == 0 {
            return invalid("point must have at least one coordinate");
        }
        let has_zero = match self {
            DunomialPoint::Exact(v) => v.iter().any(GaussianRational::is_zero),
            DunomialPoint::Approx(p) => p.coords().iter().any(|z| z.norm() == 0.0),
        };
        if has_zero {
            return invalid("dunomial queries need all coordinates nonzero");
        }
        match (mode, self) {
            (DunomialMode::ExactRational, DunomialPoint::Approx(_)) => {
                invalid("exact mode needs rational coordinates")
            }
            (DunomialMode::Numeric { tol }, _) if !(tol > 0.0 && tol.is_finite()) => {
                invalid("tolerance must be positive and finite")
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for DunomialPoint {
    type Err = Error;

    /// Comma-separated coordinates, each `p/q`, an integer, a decimal, or
    /// `re:im`. Exact when every coordinate parses as a Gaussian rational.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let exact: Result<Vec<GaussianRational>> = parts.iter().map(|p| p.parse()).collect();
        match exact {
            Ok(v) => Ok(DunomialPoint::Exact(v)),
            Err(_) => {
                let coords = parts
                    .iter()
                    .map(|p| parse_complex(p))
                    .collect::<Result<Vec<_>>>()?;
                Ok(DunomialPoint::Approx(ComplexPoint::new(coords)?))
            }
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("bad coordinate {s:?}"));
    let (re, im) = s.split_once(':').unwrap_or((s, "0"));
    Ok(Complex64::new(
        re.trim().parse().map_err(|_| bad())?,
        im.trim().parse().map_err(|_| bad())?,
    ))
}

/// `log|x^e|` and `arg x^e` (unreduced).
fn log_monomial(e: &[u32], logs: &[(f64, f64)]) -> (f64, f64) {
    e.iter().zip(logs).fold((0.0, 0.0), |(m, a), (&k, &(lm, la))| {
        (m + k as f64 * lm, a + k as f64 * la)
    })
}

fn vanishes_numeric(a: (f64, f64), b: (f64, f64), sign: Sign, tol: f64) -> bool {
    // w = x^β / x^α; test |1 + s·w| ≤ tol · max(1, |w|)
    let l = b.0 - a.0;
    if l.abs() > 1.0 {
        return false;
    }
    let theta = (b.1 - a.1).rem_euclid(std::f64::consts::TAU);
    let w = Complex64::from_polar(l.exp(), theta);
    let v = Complex64::new(1.0, 0.0) + w * sign.value() as f64;
    v.norm() <= tol * l.exp().max(1.0)
}

fn point_logs(x: &[Complex64]) -> Vec<(f64, f64)> {
    x.iter().map(|z| (z.norm().ln(), z.arg())).collect()
}

/// Does `D` vanish at `x` under `mode`?
pub fn satisfies(dun: &Dunomial, x: &DunomialPoint, mode: DunomialMode) -> Result<bool> {
    x.check(mode)?;
    if dun.vars() != x.dim() {
        return invalid("dimension mismatch between dunomial and point");
    }
    Ok(match (mode, x) {
        (DunomialMode::ExactRational, DunomialPoint::Exact(v)) => dun.eval_exact(v).is_zero(),
        (DunomialMode::Numeric { tol }, _) => {
            let logs = point_logs(&x.to_complex());
            vanishes_numeric(
                log_monomial(&dun.alpha, &logs),
                log_monomial(&dun.beta, &logs),
                dun.sign,
                tol,
            )
        }
        _ => unreachable!("checked above"),
    })
}

/// Minimal order of a dunomial vanishing at `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Order {
    Finite { order: u32, witness: Dunomial },
    /// No dunomial of degree ≤ cap vanishes at the point.
    Infinity { cap: u32 },
}

impl Order {
    pub fn value(&self) -> Option<u32> {
        match self {
            Order::Finite { order, .. } => Some(*order),
            Order::Infinity { .. } => None,
        }
    }
}

/// `r(x)` restricted to dunomials of degree ≤ `cap`. A reduced dunomial has
/// the smallest degree among those with its difference vector, so scanning
/// difference vectors by increasing `|δ|₁` finds the minimum.
pub fn r_of_x(x: &DunomialPoint, cap: u32, mode: DunomialMode) -> Result<Order> {
    x.check(mode)?;
    if cap == 0 {
        return invalid("cap must be at least 1");
    }
    let d = x.dim();
    let logs = point_logs(&x.to_complex());
    for r in 1..=2 * cap {
        for dun in enumerate_reduced_by_order(d, r)? {
            if dun.degree() > cap {
                continue;
            }
            let hit = match (mode, x) {
                (DunomialMode::ExactRational, DunomialPoint::Exact(v)) => {
                    dun.eval_exact(v).is_zero()
                }
                (DunomialMode::Numeric { tol }, _) => vanishes_numeric(
                    log_monomial(&dun.alpha, &logs),
                    log_monomial(&dun.beta, &logs),
                    dun.sign,
                    tol,
                ),
                _ => unreachable!(),
            };
            if hit {
                return Ok(Order::Finite {
                    order: r,
                    witness: dun,
                });
            }
        }
    }
    Ok(Order::Infinity { cap })
}

/// `R_n(x)`: dunomials of degree ≤ n (unordered exponent pairs, either sign)
/// vanishing at `x`. Exact mode groups monomials by value; `x^α = x^β`
/// contributes through the − sign and `x^α = −x^β` through the + sign.
pub fn count_satisfied(x: &DunomialPoint, n: u32, mode: DunomialMode) -> Result<u64> {
    x.check(mode)?;
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let monos = graded_lex_monomials(x.dim(), n as usize);
    match (mode, x) {
        (DunomialMode::ExactRational, DunomialPoint::Exact(v)) => {
            let mut groups: HashMap<GaussianRational, u64> = HashMap::new();
            for e in &monos {
                *groups.entry(monomial_exact(e, v)).or_default() += 1;
            }
            let mut count = 0;
            for (val, &k) in &groups {
                count += k * (k - 1) / 2;
                if !val.is_negative_canonical() {
                    count += k * groups.get(&val.neg()).copied().unwrap_or(0);
                }
            }
            Ok(count)
        }
        (DunomialMode::Numeric { tol }, _) => {
            let logs = point_logs(&x.to_complex());
            let vals: Vec<(f64, f64)> = monos.iter().map(|e| log_monomial(e, &logs)).collect();
            // sweep in order of log-modulus; only nearby pairs can vanish
            let mut order: Vec<usize> = (0..vals.len()).collect();
            order.sort_by(|&i, &j| vals[i].0.total_cmp(&vals[j].0));
            let mut count = 0;
            for (pos, &i) in order.iter().enumerate() {
                for &j in &order[pos + 1..] {
                    if vals[j].0 - vals[i].0 > 1.0 {
                        break;
                    }
                    for sign in [Sign::Plus, Sign::Minus] {
                        count += u64::from(vanishes_numeric(vals[i], vals[j], sign, tol));
                    }
                }
            }
            Ok(count)
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> DunomialPoint {
        s.parse().unwrap()
    }

    #[test]
    fn order_and_reduce() {
        let d = Dunomial::new(vec![1, 0], vec![0, 1], Sign::Plus).unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(d.degree(), 1);
        let d = Dunomial::new(vec![3, 2], vec![1, 2], Sign::Minus).unwrap();
        assert_eq!(d.order(), 2);
        let d = Dunomial::new(vec![2, 1], vec![1, 1], Sign::Minus).unwrap();
        let r = d.reduce();
        assert_eq!((r.alpha.clone(), r.beta.clone()), (vec![1, 0], vec![0, 0]));
        assert_eq!(r.reduce(), r);
        assert!(Dunomial::new(vec![1], vec![1], Sign::Plus).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_dunomials(1, 2).unwrap().len(), 6);
        assert_eq!(enumerate_dunomials(2, 2).unwrap().len(), 30);
        assert_eq!(enumerate_reduced_by_order(1, 1).unwrap().len(), 2);
        assert_eq!(enumerate_reduced_by_order(1, 7).unwrap().len(), 2);
        for r in 1..=12 {
            let v = enumerate_reduced_by_order(2, r).unwrap();
            assert_eq!(v.len() as u32, 4 * r);
            assert!(v.iter().all(|d| d.is_reduced() && d.order() == r));
        }
        assert_eq!(enumerate_reduced_by_order(3, 1).unwrap().len(), 6);
    }

    #[test]
    fn r_of_x_examples() {
        let exact = DunomialMode::ExactRational;
        assert_eq!(r_of_x(&pt("1,1"), 1, exact).unwrap().value(), Some(1));
        let r = r_of_x(&pt("2,1/2"), 2, exact).unwrap();
        assert_eq!(r.value(), Some(2));
        assert_eq!(r_of_x(&pt("2,1/2"), 1, exact).unwrap().value(), None);
        assert_eq!(r_of_x(&pt("2"), 30, exact).unwrap(), Order::Infinity { cap: 30 });
        let num = DunomialMode::Numeric { tol: DEFAULT_TOL };
        assert_eq!(r_of_x(&pt("2.0,0.5"), 4, num).unwrap().value(), Some(2));
        assert_eq!(r_of_x(&pt("-1"), 3, exact).unwrap().value(), Some(1));
        assert!(r_of_x(&pt("0,1"), 3, exact).is_err());
        assert!("1.5e0,0.1x".parse::<DunomialPoint>().is_err());
    }

    #[test]
    fn count_examples() {
        let exact = DunomialMode::ExactRational;
        assert_eq!(count_satisfied(&pt("2,3"), 8, exact).unwrap(), 0);
        assert_eq!(count_satisfied(&pt("1,1"), 2, exact).unwrap(), 15);
        // all-minus-ones: equal values pair with −, opposite values with +
        let c = count_satisfied(&pt("-1,-1"), 2, exact).unwrap();
        assert_eq!(c, 15);
        let num = DunomialMode::Numeric { tol: DEFAULT_TOL };
        for s in ["1,1", "-1,-1", "2,1/2", "0:1,-1", "3,1/3"] {
            let p = pt(s);
            assert_eq!(
                count_satisfied(&p, 6, exact).unwrap(),
                count_satisfied(&p, 6, num).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn numeric_large_degree() {
        // x = (2, 1/2) at degree 1500: monomials overflow f64 but logs do not
        let p = DunomialPoint::Approx(ComplexPoint::real(&[2.0, 0.5]).unwrap());
        let r = r_of_x(&p, 1500, DunomialMode::Numeric { tol: DEFAULT_TOL }).unwrap();
        assert_eq!(r.value(), Some(2));
    }
}
