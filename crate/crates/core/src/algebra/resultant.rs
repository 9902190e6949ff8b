//! Exact resultants by CRT, the modular nonzero filter, and the univariate
//! common-root decision pipeline.
//!
//! Sign convention: `Res(f, g)` is the determinant of the Sylvester matrix
//! with the `deg g` shifted rows of `f` first, i.e.
//! `Res(f, g) = lc(f)^deg g · Π_{f(α)=0} g(α)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::fpoly;
use super::screen;
use super::gcd::{crt_combine, gcd_int, gcd_many};
use super::intpoly::{log2_upper, IntPoly};
use super::modp::{prime, PrimeField};
use crate::error::{invalid, Result};
use crate::poly::{BernoulliPolyUni, Sign};

/// Bits of every prime in the fixed sequence, rounded down.
const PRIME_BITS: f64 = 61.0;

/// Outcome of a resultant zero test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum ResultantVerdict {
    /// `Res(f, g) ≢ 0 (mod prime)`.
    NonzeroCertified { prime: u64 },
    /// `Res(f, g) = 0`, confirmed by an exact GCD of this degree.
    ZeroCertified { gcd_degree: usize },
    /// Every prime tried reduced the resultant to zero.
    Undecided { primes: Vec<u64> },
}

impl ResultantVerdict {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, ResultantVerdict::NonzeroCertified { .. })
    }
}

fn lead_vanishes_mod(poly: &IntPoly, p: u64) -> bool {
    (poly.leading().unwrap() % p).is_zero()
}

/// `Res(f, g)` modulo the `index`-th prime, or `None` when that prime
/// divides a leading coefficient.
fn resultant_mod_prime(f: &IntPoly, g: &IntPoly, p: u64) -> Option<u64> {
    if lead_vanishes_mod(f, p) || lead_vanishes_mod(g, p) {
        return None;
    }
    let field = PrimeField::new(p);
    let a = fpoly::reduce(&field, f);
    let b = fpoly::reduce(&field, g);
    Some(field.to_u64(fpoly::resultant(&field, &a, &b)))
}

/// Number of bits needed to hold `|Res(f, g)|` (Hadamard bound).
pub fn hadamard_bits(f: &IntPoly, g: &IntPoly) -> f64 {
    let m = g.degree_or_zero() as f64;
    let n = f.degree_or_zero() as f64;
    0.5 * m * log2_upper(&f.norm2_squared()) + 0.5 * n * log2_upper(&g.norm2_squared())
}

/// Exact `Res(f, g)` via CRT over the fixed prime sequence.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return invalid("resultant of a zero polynomial");
    }
    // need Π p > 2·|Res|
    let needed_bits = hadamard_bits(f, g) + 2.0;
    let mut modulus = BigInt::one();
    let mut value = BigInt::zero();
    let mut have_bits = 0.0;
    let mut index = 0;
    while have_bits < needed_bits {
        let p = prime(index);
        index += 1;
        let Some(r) = resultant_mod_prime(f, g, p) else {
            continue;
        };
        let field = PrimeField::new(p);
        let r_sym = field.to_i64_symmetric(field.from_u64(r));
        value = crt_combine(&value, &modulus, r_sym, p);
        modulus *= p;
        have_bits += PRIME_BITS;
    }
    let half = &modulus >> 1;
    let value = value.mod_floor(&modulus);
    Ok(if value > half { value - modulus } else { value })
}

/// Tries up to `prime_budget` primes; certifies a nonzero resultant on the
/// first prime where it does not vanish.
pub fn modular_resultant_filter(f: &IntPoly, g: &IntPoly, prime_budget: usize) -> ResultantVerdict {
    let mut tried = Vec::with_capacity(prime_budget);
    let mut index = 0;
    while tried.len() < prime_budget {
        let p = prime(index);
        index += 1;
        match resultant_mod_prime(f, g, p) {
            None => continue,
            Some(0) => tried.push(p),
            Some(_) => return ResultantVerdict::NonzeroCertified { prime: p },
        }
    }
    ResultantVerdict::Undecided { primes: tried }
}

/// Filter followed by escalation to the exact GCD; never returns `Undecided`.
pub fn certify_resultant(f: &IntPoly, g: &IntPoly, prime_budget: usize) -> Result<ResultantVerdict> {
    if f.is_zero() || g.is_zero() {
        return invalid("resultant of a zero polynomial");
    }
    let quick = modular_resultant_filter(f, g, prime_budget);
    if quick.is_nonzero() {
        return Ok(quick);
    }
    let h = gcd_int(f, g)?;
    let gcd_degree = h.degree_or_zero();
    if gcd_degree >= 1 {
        return Ok(ResultantVerdict::ZeroCertified { gcd_degree });
    }
    // Coprime: a nonzero resultant has finitely many prime divisors.
    let mut index = 0;
    loop {
        let p = prime(index);
        index += 1;
        if let Some(r) = resultant_mod_prime(f, g, p) {
            if r != 0 {
                return Ok(ResultantVerdict::NonzeroCertified { prime: p });
            }
        }
    }
}

/// Which stage of the univariate pipeline settled a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionStage {
    /// All polynomials vanish at `1` or all at `-1`.
    Pm1Accept,
    /// Some pairwise resultant is nonzero modulo a prime.
    ModularReject,
    /// Exact GCD computation.
    ExactGcd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub pm1_filter: bool,
    pub prime_budget: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            pm1_filter: true,
            prime_budget: 2,
        }
    }
}

/// Modular step of the pipeline on sign vectors directly: a coprimality
/// screen mod a small prime, then resultants mod the first `prime_budget`
/// primes of the fixed sequence. Leading coefficients are ±1, so no prime
/// is ever unlucky for the degree.
fn bernoulli_filter_rejects(polys: &[BernoulliPolyUni], prime_budget: usize) -> bool {
    let small: Vec<Vec<u32>> = polys
        .iter()
        .map(|p| screen::lift(p.coeff_values()))
        .collect();
    if small[1..].iter().any(|q| screen::coprime(&small[0], q)) {
        return true;
    }
    (0..prime_budget).any(|i| {
        let field = PrimeField::new(prime(i));
        let one = field.one();
        let minus = field.neg(one);
        let lift = |p: &BernoulliPolyUni| -> Vec<u64> {
            p.coeffs()
                .iter()
                .map(|s| if *s == Sign::Plus { one } else { minus })
                .collect()
        };
        let first = lift(&polys[0]);
        polys[1..]
            .iter()
            .any(|q| fpoly::resultant(&field, &first, &lift(q)) != 0)
    })
}

/// Whether `p` and `q` share a complex root.
pub fn common_root_exists(p: &BernoulliPolyUni, q: &BernoulliPolyUni) -> bool {
    common_root_decision(&[p.clone(), q.clone()], PipelineOptions::default()).0
}

/// Common-root decision for two or more univariate Bernoulli polynomials.
///
/// Pipeline: (1) ±1 evaluation accepts when every polynomial vanishes at the
/// same point `1` or `-1`; (2) a nonzero modular resultant of the first
/// polynomial with any other rejects; (3) the exact GCD decides.
pub fn common_root_decision(
    polys: &[BernoulliPolyUni],
    opts: PipelineOptions,
) -> (bool, DecisionStage) {
    assert!(polys.len() >= 2, "need at least two polynomials");
    if opts.pm1_filter {
        let values: Vec<(i64, i64)> = polys.iter().map(|p| p.eval_at_pm1()).collect();
        if values.iter().all(|v| v.0 == 0) || values.iter().all(|v| v.1 == 0) {
            return (true, DecisionStage::Pm1Accept);
        }
    }
    if opts.prime_budget > 0 && bernoulli_filter_rejects(polys, opts.prime_budget) {
        return (false, DecisionStage::ModularReject);
    }
    let ints: Vec<IntPoly> = polys.iter().map(IntPoly::from_bernoulli).collect();
    let g = gcd_many(&ints).expect("Bernoulli polynomials are nonzero");
    (g.degree_or_zero() >= 1, DecisionStage::ExactGcd)
}
