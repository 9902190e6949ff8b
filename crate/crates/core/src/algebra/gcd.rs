//! Small-prime modular GCD over ℤ[x], certified by exact trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fpoly;
use super::intpoly::IntPoly;
use super::modp::{prime, PrimeField};
use crate::error::{invalid, Result};

/// Primitive GCD of `f` and `g` with positive leading coefficient.
///
/// Contents are ignored: the result is the GCD of the primitive parts, so
/// `gcd_int(f, f)` is the primitive part of `f`. Rejects two zero inputs.
pub fn gcd_int(f: &IntPoly, g: &IntPoly) -> Result<IntPoly> {
    if f.is_zero() && g.is_zero() {
        return invalid("gcd of two zero polynomials");
    }
    if f.is_zero() {
        return Ok(g.primitive_part());
    }
    if g.is_zero() {
        return Ok(f.primitive_part());
    }
    let a = f.primitive_part();
    let b = g.primitive_part();
    if a.is_constant() || b.is_constant() {
        return Ok(IntPoly::one());
    }
    if a == b {
        return Ok(a);
    }
    Ok(modular_gcd(&a, &b))
}

/// GCD of a non-empty list of polynomials, not all zero.
pub fn gcd_many(polys: &[IntPoly]) -> Result<IntPoly> {
    let mut acc = IntPoly::zero();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = if acc.is_zero() {
            p.primitive_part()
        } else {
            gcd_int(&acc, p)?
        };
        if acc.is_constant() {
            break;
        }
    }
    if acc.is_zero() {
        return invalid("gcd of zero polynomials");
    }
    Ok(acc)
}

/// Brown-style modular GCD of two primitive polynomials of positive degree.
fn modular_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let lead_a = a.leading().unwrap();
    let lead_b = b.leading().unwrap();
    let gamma = lead_a.gcd(lead_b);
    let lead_product = lead_a * lead_b;

    // CRT state: images of γ·gcd with the smallest degree seen so far.
    let mut modulus = BigInt::one();
    let mut lifted: Vec<BigInt> = Vec::new();
    let mut degree = usize::MAX;
    let mut last_candidate: Option<IntPoly> = None;

    for index in 0.. {
        let p = prime(index);
        if (&lead_product % p).is_zero() {
            continue;
        }
        let field = PrimeField::new(p);
        let ga = fpoly::reduce(&field, a);
        let gb = fpoly::reduce(&field, b);
        let mut image = fpoly::gcd_monic(&field, &ga, &gb);
        let d = image.len() - 1;
        if d == 0 {
            // p does not divide lc(a)·lc(b), so the true gcd has degree 0.
            return IntPoly::one();
        }
        if d > degree {
            continue; // unlucky prime
        }
        let gamma_p = field.from_bigint(&gamma);
        for c in image.iter_mut() {
            *c = field.mul(*c, gamma_p);
        }
        let residues: Vec<i64> = image.iter().map(|&c| field.to_i64_symmetric(c)).collect();
        if d < degree {
            degree = d;
            modulus = BigInt::from(p);
            lifted = residues.iter().map(|&r| BigInt::from(r)).collect();
            last_candidate = None;
        } else {
            lifted = lifted
                .iter()
                .zip(&residues)
                .map(|(x, &r)| crt_combine(x, &modulus, r, p))
                .collect();
            modulus *= p;
        }
        let half = &modulus >> 1;
        let symmetric: Vec<BigInt> = lifted
            .iter()
            .map(|x| {
                let x = x.mod_floor(&modulus);
                if x > half {
                    x - &modulus
                } else {
                    x
                }
            })
            .collect();
        let candidate = IntPoly::new(symmetric).primitive_part();
        let stable = last_candidate.as_ref() == Some(&candidate);
        if (stable || candidate.degree() == Some(degree))
            && a.div_exact(&candidate).is_some()
            && b.div_exact(&candidate).is_some()
        {
            return candidate;
        }
        last_candidate = Some(candidate);
    }
    unreachable!("prime sequence is infinite")
}

/// `y ≡ x (mod m)`, `y ≡ r (mod p)`, returned in `[0, m·p)`.
pub(crate) fn crt_combine(x: &BigInt, m: &BigInt, r: i64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let x_mod_p = x.mod_floor(&pb);
    let m_mod_p = m.mod_floor(&pb);
    let field = PrimeField::new(p);
    let diff = field.sub(field.from_i64(r), field.from_bigint(&x_mod_p));
    let inv_m = field.inv(field.from_bigint(&m_mod_p));
    let t = field.to_u64(field.mul(diff, inv_m));
    let y = x + m * BigInt::from(t);
    let mp = m * &pb;
    let y = y.mod_floor(&mp);
    debug_assert!(!y.is_negative());
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::BernoulliPolyUni;
    use crate::rng::Seed;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn textbook_examples() {
        assert_eq!(gcd_int(&p(&[-1, 0, 1]), &p(&[1, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(gcd_int(&p(&[1, 0, 1]), &p(&[-1, 0, 1])).unwrap(), p(&[1]));
        let f = p(&[6, -4, 2]);
        assert_eq!(gcd_int(&f, &f).unwrap(), f.primitive_part());
        assert!(gcd_int(&IntPoly::zero(), &IntPoly::zero()).is_err());
        assert_eq!(gcd_int(&IntPoly::zero(), &p(&[0, -2])).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn non_monic_common_factor() {
        // (3x+2)(x^2+1) and (3x+2)(5x-7)
        let h = p(&[2, 3]);
        let f = h.mul(&p(&[1, 0, 1]));
        let g = h.mul(&p(&[-7, 5])).scale(&BigInt::from(4));
        assert_eq!(gcd_int(&f, &g).unwrap(), h);
    }

    #[test]
    fn big_coefficients() {
        let h = p(&[123456789, -987654321, 555555555, 1]);
        let h2 = h.mul(&h).mul(&h);
        let f = h2.mul(&p(&[1, 1, 1]));
        let g = h2.mul(&p(&[-1, 0, 0, 1, 1]));
        assert_eq!(gcd_int(&f, &g).unwrap(), h2.primitive_part());
    }

    #[test]
    fn gcd_divides_bernoulli_pairs() {
        for k in 0..300 {
            let n = 1 + (k % 9) as usize;
            let a = IntPoly::from_bernoulli(&BernoulliPolyUni::sample(n, Seed::new(42, 2 * k)));
            let b = IntPoly::from_bernoulli(&BernoulliPolyUni::sample(n, Seed::new(42, 2 * k + 1)));
            let g = gcd_int(&a, &b).unwrap();
            assert!(a.pseudo_rem(&g).is_zero());
            assert!(b.pseudo_rem(&g).is_zero());
            assert!(g.leading().unwrap().is_positive());
        }
    }

    #[test]
    fn gcd_many_chains() {
        let x1 = p(&[-1, 1]);
        let list = vec![x1.mul(&p(&[1, 1])), IntPoly::zero(), x1.mul(&p(&[2, 1]))];
        assert_eq!(gcd_many(&list).unwrap(), x1);
        assert!(gcd_many(&[IntPoly::zero()]).is_err());
    }
}
