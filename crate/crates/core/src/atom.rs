//! Exact Littlewood–Offord atom probabilities `P(Σ ε_i ξ_i = 0)`.
//!
//! No floating point enters any count here. Partial sums are hashed through
//! exact keys: big integers, normalised Gaussian rationals, or reduced
//! residues of `ℚ[x]/(modulus)` with canonical rational coefficients.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{gcd_int, IntPoly};
use crate::error::{invalid, Error, Result};
use crate::gaussian::GaussianRational;

/// One exact entry of an [`AtomVector`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactValue {
    Integer(BigInt),
    Gaussian(GaussianRational),
    /// Reduced residue, coefficients lowest degree first, no trailing zeros.
    Residue(Vec<BigRational>),
}

impl ExactValue {
    fn zero_like(&self) -> ExactValue {
        match self {
            ExactValue::Integer(_) => ExactValue::Integer(BigInt::zero()),
            ExactValue::Gaussian(_) => ExactValue::Gaussian(GaussianRational::zero()),
            ExactValue::Residue(_) => ExactValue::Residue(Vec::new()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactValue::Integer(a) => a.is_zero(),
            ExactValue::Gaussian(a) => a.is_zero(),
            ExactValue::Residue(a) => a.is_empty(),
        }
    }

    pub fn add(&self, other: &ExactValue) -> ExactValue {
        match (self, other) {
            (ExactValue::Integer(a), ExactValue::Integer(b)) => ExactValue::Integer(a + b),
            (ExactValue::Gaussian(a), ExactValue::Gaussian(b)) => ExactValue::Gaussian(a.add(b)),
            (ExactValue::Residue(a), ExactValue::Residue(b)) => {
                let n = a.len().max(b.len());
                let zero = BigRational::zero();
                let mut out: Vec<BigRational> = (0..n)
                    .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
                    .collect();
                trim_rational(&mut out);
                ExactValue::Residue(out)
            }
            _ => panic!("mixed atom value kinds"),
        }
    }

    pub fn neg(&self) -> ExactValue {
        match self {
            ExactValue::Integer(a) => ExactValue::Integer(-a),
            ExactValue::Gaussian(a) => ExactValue::Gaussian(a.neg()),
            ExactValue::Residue(a) => ExactValue::Residue(a.iter().map(|c| -c).collect()),
        }
    }

    /// First nonzero component is negative.
    fn is_negative_canonical(&self) -> bool {
        match self {
            ExactValue::Integer(a) => a.is_negative(),
            ExactValue::Gaussian(a) => a.is_negative_canonical(),
            ExactValue::Residue(a) => a.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()),
        }
    }

    /// Representative of the class `{v, -v}`.
    fn abs_class(&self) -> ExactValue {
        if self.is_negative_canonical() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

fn trim_rational(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// What is known about the irreducibility of a number-field modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusStatus {
    Irreducible,
    Reducible,
    /// Degree ≥ 4 with no rational root and no repeated factor found.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomMode {
    Integer,
    GaussianRational,
    NumberField { modulus: IntPoly, status: ModulusStatus },
}

/// Exact vector `ξ` for atom-probability computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomVector {
    entries: Vec<ExactValue>,
    mode: AtomMode,
}

impl AtomVector {
    pub fn integers(entries: &[i64]) -> Result<Self> {
        Self::from_bigints(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn from_bigints(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return invalid("atom vector must have at least one entry");
        }
        Ok(Self {
            entries: entries.into_iter().map(ExactValue::Integer).collect(),
            mode: AtomMode::Integer,
        })
    }

    pub fn gaussian(entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.is_empty() {
            return invalid("atom vector must have at least one entry");
        }
        Ok(Self {
            entries: entries.into_iter().map(ExactValue::Gaussian).collect(),
            mode: AtomMode::GaussianRational,
        })
    }

    /// Entries are polynomials over ℚ (lowest degree first), reduced modulo
    /// `modulus` on construction.
    pub fn number_field(modulus: IntPoly, entries: Vec<Vec<BigRational>>) -> Result<Self> {
        if entries.is_empty() {
            return invalid("atom vector must have at least one entry");
        }
        let field = NumberField::new(modulus)?;
        let entries = entries
            .into_iter()
            .map(|e| ExactValue::Residue(field.reduce(e)))
            .collect();
        Ok(Self {
            entries,
            mode: AtomMode::NumberField {
                status: field.status,
                modulus: field.modulus,
            },
        })
    }

    pub fn entries(&self) -> &[ExactValue] {
        &self.entries
    }

    pub fn mode(&self) -> &AtomMode {
        &self.mode
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn all_nonzero(&self) -> bool {
        self.entries.iter().all(|e| !e.is_zero())
    }

    pub fn all_distinct(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.entries.len());
        self.entries.iter().all(|e| seen.insert(e))
    }

    /// New vector with entries permuted by `perm` and signs flipped where
    /// `flip[i]` is set.
    pub fn transformed(&self, perm: &[usize], flip: &[bool]) -> AtomVector {
        let entries = perm
            .iter()
            .zip(flip)
            .map(|(&i, &f)| if f { self.entries[i].neg() } else { self.entries[i].clone() })
            .collect();
        AtomVector {
            entries,
            mode: self.mode.clone(),
        }
    }
}

impl AtomVector {
    /// Parses a vector file: a mode header line (`integer`, `gaussian`, or
    /// `field c0 c1 ... cd` giving the modulus lowest degree first), then one
    /// entry per line. Gaussian entries use `re:im`; field entries list
    /// rational coefficients lowest degree first. `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty vector file".into()))?;
        let mut words = header.split_whitespace();
        let mode = words.next().unwrap_or("");
        match mode {
            "integer" => {
                let entries = lines
                    .map(|l| {
                        l.parse::<BigInt>()
                            .map_err(|e| Error::Parse(format!("bad integer {l:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::from_bigints(entries)
            }
            "gaussian" => {
                let entries = lines.map(str::parse).collect::<Result<Vec<GaussianRational>>>()?;
                Self::gaussian(entries)
            }
            "field" => {
                let modulus: IntPoly = words.collect::<Vec<_>>().join(" ").parse()?;
                let entries = lines
                    .map(|l| {
                        l.split_whitespace()
                            .map(|t| {
                                let g: GaussianRational = t.parse()?;
                                if !g.im.is_zero() {
                                    return Err(Error::Parse(format!("field coefficient {t:?} must be rational")));
                                }
                                Ok(g.re)
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::number_field(modulus, entries)
            }
            other => Err(Error::Parse(format!(
                "unknown vector mode {other:?} (expected integer, gaussian or field)"
            ))),
        }
    }
}

/// `ℚ[x]/(modulus)` arithmetic on dense rational coefficient vectors.
struct NumberField {
    modulus: IntPoly,
    monic: Vec<BigRational>,
    status: ModulusStatus,
}

impl NumberField {
    fn new(modulus: IntPoly) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 {
            return invalid("number-field modulus must be nonconstant");
        }
        let lead = BigRational::from_integer(modulus.leading().unwrap().clone());
        let monic = modulus
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()) / &lead)
            .collect();
        let status = modulus_status(&modulus);
        Ok(Self {
            modulus,
            monic,
            status,
        })
    }

    fn degree(&self) -> usize {
        self.monic.len() - 1
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        trim_rational(&mut v);
        while v.len() > d {
            let top = v.pop().unwrap();
            let k = v.len() - d;
            for (j, c) in self.monic[..d].iter().enumerate() {
                v[k + j] -= &top * c;
            }
            trim_rational(&mut v);
        }
        v
    }

    fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn has_rational_root(p: &IntPoly) -> Option<bool> {
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return Some(true);
    }
    let nums = small_divisors(&c0)?;
    let dens = small_divisors(p.leading().unwrap())?;
    for a in &nums {
        for b in &dens {
            if !a.gcd(b).is_one() {
                continue;
            }
            for num in [a.clone(), -a] {
                // b^deg · p(num/b) = Σ c_i num^i b^(deg-i)
                let deg = p.degree().unwrap();
                let v: BigInt = p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * num.pow(i as u32) * b.pow((deg - i) as u32))
                    .sum();
                if v.is_zero() {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

fn modulus_status(p: &IntPoly) -> ModulusStatus {
    let deg = p.degree().unwrap_or(0);
    if deg == 1 {
        return ModulusStatus::Irreducible;
    }
    if gcd_int(p, &p.derivative()).map(|g| !g.is_constant()).unwrap_or(false) {
        return ModulusStatus::Reducible;
    }
    match has_rational_root(p) {
        Some(true) => ModulusStatus::Reducible,
        Some(false) if deg <= 3 => ModulusStatus::Irreducible,
        _ => ModulusStatus::Unknown,
    }
}

/// `(1, x, x², …, x^{m-1})` in `ℚ[x]/(minpoly)`.
pub fn power_vector(minpoly: &IntPoly, m: usize) -> Result<AtomVector> {
    if m == 0 {
        return invalid("power vector needs m ≥ 1");
    }
    let field = NumberField::new(minpoly.clone())?;
    let x = field.reduce(vec![BigRational::zero(), BigRational::one()]);
    let mut entries = Vec::with_capacity(m);
    let mut cur = field.reduce(vec![BigRational::one()]);
    for _ in 0..m {
        entries.push(ExactValue::Residue(cur.clone()));
        cur = field.mul(&cur, &x);
    }
    Ok(AtomVector {
        entries,
        mode: AtomMode::NumberField {
            status: field.status,
            modulus: field.modulus,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomResult {
    /// `zero_count / 2^m`
    #[serde(serialize_with = "ser_display", deserialize_with = "de_rational")]
    pub probability: BigRational,
    #[serde(serialize_with = "ser_display", deserialize_with = "de_parsed")]
    pub zero_count: BigUint,
    pub m: usize,
    /// Set in number-field mode when the modulus is not known to be irreducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus_warning: Option<ModulusStatus>,
}

pub(crate) fn ser_display<S: serde::Serializer, T: std::fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn de_parsed<'de, D, T>(d: D) -> std::result::Result<T, D::Error>
where
    D: serde::Deserializer<'de>,
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

fn de_rational<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
    de_parsed(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomMethod {
    /// Walk all `2^m` sign patterns (m ≤ 30).
    Enumerate,
    /// Distribution of partial sums keyed by exact value.
    Dp,
}

pub const MAX_ENUMERATION_LEN: usize = 30;

fn result_for(xi: &AtomVector, zero_count: BigUint) -> AtomResult {
    let m = xi.len();
    let probability = BigRational::new(
        BigInt::from(zero_count.clone()),
        BigInt::one() << m,
    );
    let modulus_warning = match &xi.mode {
        AtomMode::NumberField { status, .. } if *status != ModulusStatus::Irreducible => {
            Some(*status)
        }
        _ => None,
    };
    AtomResult {
        probability,
        zero_count,
        m,
        modulus_warning,
    }
}

/// Exact atom probability by the partial-sum distribution.
pub fn atom_probability(xi: &AtomVector) -> AtomResult {
    atom_probability_dp(xi)
}

pub fn atom_probability_with(xi: &AtomVector, method: AtomMethod) -> Result<AtomResult> {
    match method {
        AtomMethod::Dp => Ok(atom_probability_dp(xi)),
        AtomMethod::Enumerate => atom_probability_enumerate(xi),
    }
}

pub fn atom_probability_dp(xi: &AtomVector) -> AtomResult {
    if let Some(ints) = small_integers(xi) {
        return result_for(xi, dp_small_integers(&ints));
    }
    let mut dist: HashMap<ExactValue, BigUint> = HashMap::new();
    dist.insert(xi.entries[0].zero_like(), BigUint::one());
    for e in &xi.entries {
        let minus = e.neg();
        let mut next: HashMap<ExactValue, BigUint> = HashMap::with_capacity(dist.len() * 2);
        for (s, c) in &dist {
            *next.entry(s.add(e)).or_default() += c;
            *next.entry(s.add(&minus)).or_default() += c;
        }
        dist = next;
    }
    let zero = xi.entries[0].zero_like();
    result_for(xi, dist.remove(&zero).unwrap_or_default())
}

/// Integer entries with `Σ|ξ_i|` small enough for `i64` partial sums.
fn small_integers(xi: &AtomVector) -> Option<Vec<i64>> {
    let mut total: i128 = 0;
    let mut out = Vec::with_capacity(xi.len());
    for e in &xi.entries {
        let ExactValue::Integer(v) = e else {
            return None;
        };
        let v = v.to_i64()?;
        total += (v as i128).abs();
        if total > (1i128 << 62) {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

fn dp_small_integers(xs: &[i64]) -> BigUint {
    let mut dist: HashMap<i64, BigUint> = HashMap::new();
    dist.insert(0, BigUint::one());
    for &x in xs {
        let mut next: HashMap<i64, BigUint> = HashMap::with_capacity(dist.len() * 2);
        for (s, c) in &dist {
            *next.entry(s + x).or_default() += c;
            *next.entry(s - x).or_default() += c;
        }
        dist = next;
    }
    dist.remove(&0).unwrap_or_default()
}

/// Exact atom probability by walking every sign pattern. The top sign bits
/// partition the work across threads; per-prefix counts are summed.
pub fn atom_probability_enumerate(xi: &AtomVector) -> Result<AtomResult> {
    let m = xi.len();
    if m > MAX_ENUMERATION_LEN {
        return invalid(format!(
            "enumeration supports m ≤ {MAX_ENUMERATION_LEN}, got {m}"
        ));
    }
    let prefix_bits = m.min(6);
    let inner = m - prefix_bits;
    let count: u64 = if let Some(ints) = small_integers(xi) {
        (0..1u64 << prefix_bits)
            .into_par_iter()
            .map(|prefix| {
                let base: i128 = (0..prefix_bits)
                    .map(|b| {
                        let v = ints[inner + b] as i128;
                        if (prefix >> b) & 1 == 1 { v } else { -v }
                    })
                    .sum();
                gray_walk_i128(&ints[..inner], base)
            })
            .sum()
    } else {
        (0..1u64 << prefix_bits)
            .into_par_iter()
            .map(|prefix| {
                let mut base = xi.entries[0].zero_like();
                for b in 0..prefix_bits {
                    let v = &xi.entries[inner + b];
                    base = if (prefix >> b) & 1 == 1 { base.add(v) } else { base.add(&v.neg()) };
                }
                gray_walk_exact(&xi.entries[..inner], base)
            })
            .sum()
    };
    Ok(result_for(xi, BigUint::from(count)))
}

/// Counts zero sums over all sign patterns of `xs`, offset by `base`,
/// visiting patterns in Gray-code order (one flip per step).
fn gray_walk_i128(xs: &[i64], base: i128) -> u64 {
    let mut sum: i128 = base - xs.iter().map(|&v| v as i128).sum::<i128>();
    let mut state = vec![false; xs.len()];
    let mut count = u64::from(sum == 0);
    for step in 1u64..(1u64 << xs.len()) {
        let bit = step.trailing_zeros() as usize;
        let v = 2 * xs[bit] as i128;
        sum += if state[bit] { -v } else { v };
        state[bit] = !state[bit];
        count += u64::from(sum == 0);
    }
    count
}

fn gray_walk_exact(xs: &[ExactValue], base: ExactValue) -> u64 {
    let mut sum = xs.iter().fold(base, |acc, v| acc.add(&v.neg()));
    let doubled: Vec<ExactValue> = xs.iter().map(|v| v.add(v)).collect();
    let neg_doubled: Vec<ExactValue> = doubled.iter().map(ExactValue::neg).collect();
    let mut state = vec![false; xs.len()];
    let mut count = u64::from(sum.is_zero());
    for step in 1u64..(1u64 << xs.len()) {
        let bit = step.trailing_zeros() as usize;
        sum = if state[bit] { sum.add(&neg_doubled[bit]) } else { sum.add(&doubled[bit]) };
        state[bit] = !state[bit];
        count += u64::from(sum.is_zero());
    }
    count
}

/// Simple random-walk return probability `C(m, m/2) / 2^m` (0 for odd `m`).
pub fn walk_return_prob(m: usize) -> BigRational {
    if m % 2 == 1 {
        return BigRational::zero();
    }
    BigRational::new(
        BigInt::from(binomial(m, m / 2)),
        BigInt::one() << m,
    )
}

/// `C(m, ⌊m/2⌋) / 2^m`, the largest atom any vector of nonzero entries can carry.
pub fn central_binomial_bound(m: usize) -> BigRational {
    BigRational::new(
        BigInt::from(binomial(m, m / 2)),
        BigInt::one() << m,
    )
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Ordered pairs `(j, k)`, `j = k` included, with `ξ_j = ±ξ_k`.
pub fn couples_count(xi: &AtomVector) -> u64 {
    let mut classes: HashMap<ExactValue, u64> = HashMap::new();
    for e in &xi.entries {
        *classes.entry(e.abs_class()).or_default() += 1;
    }
    classes.values().map(|c| c * c).sum()
}

/// Atom probability with the three concentration ratios.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub m: usize,
    #[serde(serialize_with = "ser_display", deserialize_with = "de_rational")]
    pub prob: BigRational,
    #[serde(with = "crate::experiment::sig17")]
    pub prob_decimal: f64,
    pub couples: u64,
    pub all_nonzero: bool,
    pub all_distinct: bool,
    /// `prob · m^{1/2}`
    #[serde(with = "crate::experiment::sig17")]
    pub erdos_ratio: f64,
    /// `prob / (C(m, ⌊m/2⌋) / 2^m)`; present when every entry is nonzero.
    #[serde(with = "crate::experiment::sig17_opt", skip_serializing_if = "Option::is_none", default)]
    pub erdos_sharp_ratio: Option<f64>,
    /// `prob · m^{3/2}`; present when the entries are pairwise distinct.
    #[serde(with = "crate::experiment::sig17_opt", skip_serializing_if = "Option::is_none", default)]
    pub ss_ratio: Option<f64>,
    /// `prob · m^{5/2} / R` with `R` the couples count.
    #[serde(with = "crate::experiment::sig17")]
    pub halasz_ratio: f64,
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // scale to keep 60 significant bits regardless of magnitude
    let num = r.numer();
    let den = r.denom();
    if num.is_zero() {
        return 0.0;
    }
    let shift = num.bits() as i64 - den.bits() as i64 - 60;
    let scaled = if shift >= 0 {
        num / (den << shift as usize)
    } else {
        (num << (-shift) as usize) / den
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

pub fn bound_report(xi: &AtomVector) -> BoundReport {
    let result = atom_probability(xi);
    let m = xi.len();
    let mf = m as f64;
    let prob_decimal = rational_to_f64(&result.probability);
    let couples = couples_count(xi);
    let all_nonzero = xi.all_nonzero();
    let all_distinct = xi.all_distinct();
    let erdos_sharp_ratio = all_nonzero
        .then(|| rational_to_f64(&(&result.probability / central_binomial_bound(m))));
    BoundReport {
        m,
        prob: result.probability,
        prob_decimal,
        couples,
        all_nonzero,
        all_distinct,
        erdos_ratio: prob_decimal * mf.sqrt(),
        erdos_sharp_ratio,
        ss_ratio: all_distinct.then(|| prob_decimal * mf.powf(1.5)),
        halasz_ratio: prob_decimal * mf.powf(2.5) / couples as f64,
    }
}
