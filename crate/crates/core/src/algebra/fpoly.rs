//! Dense polynomials over a [`PrimeField`], coefficients in Montgomery form.

use super::intpoly::IntPoly;
use super::modp::PrimeField;

pub(crate) fn reduce(f: &PrimeField, p: &IntPoly) -> Vec<u64> {
    let mut v: Vec<u64> = p.coeffs().iter().map(|c| f.from_bigint(c)).collect();
    trim(&mut v);
    v
}

#[cfg(test)]
pub(crate) fn reduce_i64(f: &PrimeField, p: &[i64]) -> Vec<u64> {
    let mut v: Vec<u64> = p.iter().map(|&c| f.from_i64(c)).collect();
    trim(&mut v);
    v
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// In-place `a mod b`; `b` must be nonzero with nonzero leading coefficient.
fn rem_in_place(f: &PrimeField, a: &mut Vec<u64>, b: &[u64]) {
    let db = b.len() - 1;
    let inv_lead = f.inv(b[db]);
    while a.len() > db {
        let top = *a.last().unwrap();
        let k = a.len() - 1 - db;
        if top != 0 {
            let q = f.mul(top, inv_lead);
            for (j, &bj) in b.iter().enumerate() {
                a[k + j] = f.sub(a[k + j], f.mul(q, bj));
            }
        }
        a.pop();
        trim(a);
    }
}

/// Monic GCD; the zero polynomial if both inputs are zero.
pub(crate) fn gcd_monic(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_in_place(f, &mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = f.inv(lead);
        for c in a.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    a
}

/// Resultant of `a` and `b` taken at their actual degrees (both nonzero),
/// with the Sylvester convention `Res(a, b) = lc(a)^deg b · Π b(α)`.
pub(crate) fn resultant(f: &PrimeField, a: &[u64], b: &[u64]) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    assert!(!a.is_empty() && !b.is_empty(), "resultant of zero polynomial");
    let mut acc = f.one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return f.mul(acc, f.pow(b[0], da as u64));
        }
        if da == 0 {
            return f.mul(acc, f.pow(a[0], db as u64));
        }
        // Res(a, b) = (-1)^{da·db} Res(b, a) = (-1)^{da·db} lc(b)^{da - dr} Res(b, a mod b)
        let lead_b = b[db];
        rem_in_place(f, &mut a, &b);
        if a.is_empty() {
            return 0;
        }
        let dr = a.len() - 1;
        if (da * db) % 2 == 1 {
            acc = f.neg(acc);
        }
        acc = f.mul(acc, f.pow(lead_b, (da - dr) as u64));
        std::mem::swap(&mut a, &mut b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::modp::PRIMES_62;

    #[test]
    fn small_resultants() {
        let f = PrimeField::new(PRIMES_62[0]);
        let x_minus_1 = reduce_i64(&f, &[-1, 1]);
        let x_plus_1 = reduce_i64(&f, &[1, 1]);
        assert_eq!(f.to_i64_symmetric(resultant(&f, &x_minus_1, &x_plus_1)), 2);
        assert_eq!(f.to_i64_symmetric(resultant(&f, &x_plus_1, &x_minus_1)), -2);
        let sq = reduce_i64(&f, &[-1, 0, 1]);
        assert_eq!(resultant(&f, &sq, &x_minus_1), 0);
        // Res(2x+1, x^2+1) = 2^2 · ((-1/2)^2 + 1) = 5
        let a = reduce_i64(&f, &[1, 2]);
        let b = reduce_i64(&f, &[1, 0, 1]);
        assert_eq!(f.to_i64_symmetric(resultant(&f, &a, &b)), 5);
        assert_eq!(f.to_i64_symmetric(resultant(&f, &b, &a)), 5);
        // constants
        let c = reduce_i64(&f, &[3]);
        assert_eq!(f.to_i64_symmetric(resultant(&f, &c, &b)), 9);
    }

    #[test]
    fn monic_gcd() {
        let f = PrimeField::new(PRIMES_62[1]);
        let a = reduce_i64(&f, &[-2, 0, 2]);
        let b = reduce_i64(&f, &[3, 3]);
        let g = gcd_monic(&f, &a, &b);
        assert_eq!(g, reduce_i64(&f, &[1, 1]));
        assert!(gcd_monic(&f, &[], &[]).is_empty());
    }
}
