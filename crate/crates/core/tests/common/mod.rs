//! Reference implementations used to cross-check the library. Each one is
//! deliberately naive and shares no code with the routine it checks.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crl::algebra::IntPoly;
use crl::gaussian::GaussianRational;
use crl::poly::{graded_lex_monomials, BernoulliPolyUni};

/// Monic GCD over ℚ by the plain Euclidean algorithm; degree only matters.
pub fn rational_gcd_degree(f: &[i64], g: &[i64]) -> usize {
    fn to_q(v: &[i64]) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = v.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }
    let mut a = to_q(f);
    let mut b = to_q(g);
    while !b.is_empty() {
        // a mod b
        while a.len() >= b.len() && !a.is_empty() {
            let q = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[shift + i] -= &q * c;
            }
            while a.last().is_some_and(Zero::is_zero) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sylvester matrix with the `deg g` shifted rows of `f` first; coefficients
/// are placed highest degree first in each row.
pub fn sylvester(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free Bareiss determinant.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    bareiss_det(sylvester(f.coeffs(), g.coeffs()))
}

/// All roots by Durand–Kerner iteration from the usual spiral start.
pub fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                delta = delta.max(step.norm());
            }
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

pub fn oracle_roots(p: &BernoulliPolyUni) -> Vec<Complex64> {
    durand_kerner(&p.coeff_values().iter().map(|&c| c as f64).collect::<Vec<_>>())
}

/// Some root of `p` within `tol` of some root of `q`.
pub fn roots_meet(rp: &[Complex64], rq: &[Complex64], tol: f64) -> bool {
    rp.iter().any(|a| rq.iter().any(|b| (a - b).norm() < tol))
}

/// Atom count by walking all `2^m` sign patterns with `i128` sums.
pub fn brute_atom_count(xs: &[i64]) -> u64 {
    let m = xs.len();
    (0u64..1 << m)
        .filter(|mask| {
            xs.iter()
                .enumerate()
                .map(|(i, &x)| if mask >> i & 1 == 1 { x as i128 } else { -(x as i128) })
                .sum::<i128>()
                == 0
        })
        .count() as u64
}

fn mono(e: &[u32], x: &[GaussianRational]) -> GaussianRational {
    let mut acc = GaussianRational::one();
    for (k, z) in e.iter().zip(x) {
        for _ in 0..*k {
            acc = acc.mul(z);
        }
    }
    acc
}

/// `R_n(x)` by testing every unordered monomial pair with both signs.
pub fn double_loop_count(x: &[GaussianRational], n: usize) -> u64 {
    let monos = graded_lex_monomials(x.len(), n);
    let vals: Vec<GaussianRational> = monos.iter().map(|e| mono(e, x)).collect();
    let mut count = 0;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if vals[i].add(&vals[j]).is_zero() {
                count += 1;
            }
            if vals[i].add(&vals[j].neg()).is_zero() {
                count += 1;
            }
        }
    }
    count
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn abs(v: &BigInt) -> BigInt {
    v.abs()
}
