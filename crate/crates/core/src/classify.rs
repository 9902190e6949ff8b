//! Root classification for ±1 polynomials: the annulus, the finite list of
//! low-degree algebraic candidates, the exact terms of the small-event
//! decomposition, and the zone of a point of ℂ².

use num_complex::Complex64;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::{gcd_int, IntPoly};
use crate::atom::walk_return_prob;
use crate::dunomial::{r_of_x, Dunomial, DunomialMode, DunomialPoint, Order};
use crate::error::{invalid, Result};
use crate::poly::{BernoulliPolyUni, ComplexPoint};

pub const ANNULUS_GUARD: f64 = 1e-6;

/// Roots with `½ − ε < |ρ| < 2 + ε`.
pub fn annulus_filter(roots: &[Complex64]) -> Vec<Complex64> {
    roots
        .iter()
        .copied()
        .filter(|z| {
            let r = z.norm();
            r > 0.5 - ANNULUS_GUARD && r < 2.0 + ANNULUS_GUARD
        })
        .collect()
}

/// Monic irreducible polynomial whose roots all lie in `½ ≤ |ρ| ≤ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CandidatePoly {
    pub poly: IntPoly,
    pub algebraic_degree: u8,
}

impl CandidatePoly {
    /// `x² − a·x − b`
    pub fn quadratic(a: i64, b: i64) -> Self {
        Self {
            poly: IntPoly::from_i64s(&[-b, -a, 1]),
            algebraic_degree: 2,
        }
    }

    pub fn linear(root: i64) -> Self {
        Self {
            poly: IntPoly::linear_root(root),
            algebraic_degree: 1,
        }
    }
}

fn is_square(v: i64) -> bool {
    v >= 0 && {
        let r = v.sqrt();
        r * r == v
    }
}

/// Moduli of the two roots of `x² − a·x − b`.
pub fn quadratic_root_moduli(a: i64, b: i64) -> [f64; 2] {
    let disc = a * a + 4 * b;
    if disc < 0 {
        let r = (-b as f64).sqrt();
        [r, r]
    } else {
        let s = (disc as f64).sqrt();
        [((a as f64 + s) / 2.0).abs(), ((a as f64 - s) / 2.0).abs()]
    }
}

/// Irreducible over ℚ with both roots in the closed annulus. Irrational
/// roots never sit exactly on `|ρ| ∈ {½, 2}`, so the float test is exact.
pub fn quadratic_qualifies(a: i64, b: i64) -> bool {
    !is_square(a * a + 4 * b)
        && quadratic_root_moduli(a, b)
            .iter()
            .all(|&r| (0.5..=2.0).contains(&r))
}

pub const QUADRATIC_BOX: i64 = 4;

/// Candidates of algebraic degree ≤ `max_algebraic_degree`: `x ∓ 1`, then
/// the qualifying `x² − a·x − b` with `|a|, |b| ≤ 4` in `(a, b)` order.
pub fn enumerate_candidates(max_algebraic_degree: u8) -> Result<Vec<CandidatePoly>> {
    if !(1..=2).contains(&max_algebraic_degree) {
        return invalid("candidate enumeration supports algebraic degree 1 or 2");
    }
    let mut out = vec![CandidatePoly::linear(1), CandidatePoly::linear(-1)];
    if max_algebraic_degree == 2 {
        for a in -QUADRATIC_BOX..=QUADRATIC_BOX {
            for b in -QUADRATIC_BOX..=QUADRATIC_BOX {
                if quadratic_qualifies(a, b) {
                    out.push(CandidatePoly::quadratic(a, b));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum RootClass {
    RationalPm1 { root: i64 },
    LowDegree { candidate: CandidatePoly },
    Higher,
}

/// Exact leading terms of `p(n)`: `I = P(both vanish at 1)`,
/// `II = P(both vanish at −1)`, `III = −P(both vanish at ±1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTerms {
    pub n: usize,
    #[serde(serialize_with = "crate::atom::ser_display", deserialize_with = "de_rational")]
    pub i: BigRational,
    #[serde(serialize_with = "crate::atom::ser_display", deserialize_with = "de_rational")]
    pub ii: BigRational,
    #[serde(serialize_with = "crate::atom::ser_display", deserialize_with = "de_rational")]
    pub iii: BigRational,
}

fn de_rational<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

impl DecompositionTerms {
    pub fn sum(&self) -> BigRational {
        &self.i + &self.ii + &self.iii
    }
}

/// With `m = n + 1` coefficients, `P(1)` is a walk of length `m` and `P(−1)`
/// is the same walk with alternate steps flipped. Both vanish iff the even
/// and the odd coefficients each sum to zero, which are independent walks.
pub fn decompose_terms(n: usize) -> DecompositionTerms {
    let m = n + 1;
    let w = walk_return_prob(m);
    let q_even = walk_return_prob(m.div_ceil(2));
    let q_odd = walk_return_prob(m / 2);
    let both = &q_even * &q_odd;
    DecompositionTerms {
        n,
        i: &w * &w,
        ii: &w * &w,
        iii: -(&both * &both),
    }
}

/// Factors of `gcd(p, q)` by root class, with multiplicity. `x ∓ 1` and
/// each quadratic candidate are peeled by exact division; a nonconstant
/// remainder is reported once as `Higher`.
pub fn classify_common_roots_1d(
    p: &BernoulliPolyUni,
    q: &BernoulliPolyUni,
) -> Result<Vec<(IntPoly, RootClass)>> {
    classify_gcd(gcd_int(&IntPoly::from_bernoulli(p), &IntPoly::from_bernoulli(q))?)
}

/// Splits a common factor `g` into candidate factors and a `Higher` remainder.
pub fn classify_gcd(mut g: IntPoly) -> Result<Vec<(IntPoly, RootClass)>> {
    if g.is_zero() {
        return invalid("cannot classify the roots of the zero polynomial");
    }
    let mut out = Vec::new();
    for cand in enumerate_candidates(2)? {
        while let Some(rest) = g.div_exact(&cand.poly) {
            let class = if cand.algebraic_degree == 1 {
                RootClass::RationalPm1 {
                    root: -cand.poly.coeff(0).to_i64().unwrap(),
                }
            } else {
                RootClass::LowDegree {
                    candidate: cand.clone(),
                }
            };
            out.push((cand.poly.clone(), class));
            g = rest;
        }
    }
    if !g.is_constant() {
        out.push((g.primitive_part(), RootClass::Higher));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "zone", rename_all = "snake_case")]
pub enum ZoneTag {
    Z1 { index: usize },
    Z2 { witness: Dunomial, order: u32 },
    Z3,
}

/// Z1 if a coordinate is below `tol` in modulus, Z2 (with a minimal-order
/// witness) if a dunomial of degree ≤ n vanishes there, Z3 otherwise.
pub fn classify_point(x: &ComplexPoint, n: u32, tol: f64) -> Result<ZoneTag> {
    if !(tol > 0.0 && tol.is_finite()) {
        return invalid("tolerance must be positive and finite");
    }
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if let Some(index) = x.coords().iter().position(|z| z.norm() < tol) {
        return Ok(ZoneTag::Z1 { index });
    }
    let point = DunomialPoint::Approx(x.clone());
    Ok(match r_of_x(&point, n, DunomialMode::Numeric { tol })? {
        Order::Finite { order, witness } => ZoneTag::Z2 { witness, order },
        Order::Infinity { .. } => ZoneTag::Z3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Sign;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn annulus() {
        let v = [3.0, 1.0, 0.1].map(|r| Complex64::new(r, 0.0));
        assert_eq!(annulus_filter(&v), vec![Complex64::new(1.0, 0.0)]);
        assert!(annulus_filter(&[]).is_empty());
    }

    #[test]
    fn candidates() {
        let c1 = enumerate_candidates(1).unwrap();
        assert_eq!(c1.len(), 2);
        assert_eq!(c1[0].poly, IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(c1[1].poly, IntPoly::from_i64s(&[1, 1]));
        let c2 = enumerate_candidates(2).unwrap();
        assert!(!quadratic_qualifies(0, 1));
        assert!(quadratic_qualifies(1, 1));
        assert!(c2.contains(&CandidatePoly::quadratic(1, 1)));
        assert!(c2.contains(&CandidatePoly::quadratic(0, -1)));
        assert!(!c2.contains(&CandidatePoly::quadratic(4, 4)));
        assert_eq!(c2, enumerate_candidates(2).unwrap());
        assert!(enumerate_candidates(3).is_err());
    }

    #[test]
    fn decomposition_values() {
        let t = decompose_terms(5);
        assert_eq!(t.i, q(25, 256));
        assert_eq!(t.ii, q(25, 256));
        assert_eq!(t.iii, q(0, 1));
        assert_eq!(decompose_terms(4).i, q(0, 1));
        assert_eq!(decompose_terms(7).iii, q(-81, 4096));
        assert_eq!(decompose_terms(1).sum(), q(1, 2));
    }

    #[test]
    fn classify_1d() {
        let p: BernoulliPolyUni = "++".parse().unwrap();
        let out = classify_common_roots_1d(&p, &p).unwrap();
        assert_eq!(out, vec![(IntPoly::from_i64s(&[1, 1]), RootClass::RationalPm1 { root: -1 })]);
        let a: BernoulliPolyUni = "++".parse().unwrap();
        let b: BernoulliPolyUni = "+-".parse().unwrap();
        assert!(classify_common_roots_1d(&a, &b).unwrap().is_empty());
        // 1 + x + x² shares both complex cube roots of unity with itself
        let c: BernoulliPolyUni = "+++".parse().unwrap();
        let out = classify_common_roots_1d(&c, &c.negated()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(
            out[0].1,
            RootClass::LowDegree { candidate: CandidatePoly::quadratic(-1, -1) }
        );
        // 1 + x − x² − x³ = (1 + x)²(1 − x)
        let d: BernoulliPolyUni = "++--".parse().unwrap();
        let out = classify_common_roots_1d(&d, &d).unwrap();
        let roots: Vec<_> = out.iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(roots.iter().filter(|c| **c == RootClass::RationalPm1 { root: -1 }).count(), 2);
        assert_eq!(roots.iter().filter(|c| **c == RootClass::RationalPm1 { root: 1 }).count(), 1);
    }

    #[test]
    fn higher_remainder() {
        // 1 + x + x² + x³ + x⁴: primitive 5th roots of unity, degree 4
        let p: BernoulliPolyUni = "+++++".parse().unwrap();
        let out = classify_common_roots_1d(&p, &p).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].1, RootClass::Higher);
        assert_eq!(out[0].0.degree(), Some(4));
    }

    #[test]
    fn zones() {
        let z = |v: &[f64]| ComplexPoint::real(v).unwrap();
        assert_eq!(classify_point(&z(&[0.0, 5.0]), 3, 1e-9).unwrap(), ZoneTag::Z1 { index: 0 });
        match classify_point(&z(&[1.0, 2.0]), 1, 1e-9).unwrap() {
            ZoneTag::Z2 { witness, order } => {
                assert_eq!(order, 1);
                assert_eq!(witness.alpha, vec![1, 0]);
                assert_eq!(witness.beta, vec![0, 0]);
                assert_eq!(witness.sign, Sign::Minus);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_point(&z(&[2.0, 3.0]), 8, 1e-9).unwrap(), ZoneTag::Z3);
    }
}
