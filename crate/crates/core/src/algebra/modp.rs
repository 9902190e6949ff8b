//! Arithmetic modulo fixed 62-bit primes, in Montgomery form.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// The 128 largest primes below `2^62`, in descending order.
pub const PRIMES_62: [u64; 128] = [
    0x3fffffffffffffc7,
    0x3fffffffffffffa9,
    0x3fffffffffffff8b,
    0x3fffffffffffff71,
    0x3fffffffffffff67,
    0x3fffffffffffff59,
    0x3fffffffffffff55,
    0x3fffffffffffff3d,
    0x3fffffffffffff35,
    0x3ffffffffffffeef,
    0x3ffffffffffffee1,
    0x3ffffffffffffec3,
    0x3ffffffffffffe45,
    0x3ffffffffffffe1d,
    0x3ffffffffffffe11,
    0x3ffffffffffffdc1,
    0x3ffffffffffffdbb,
    0x3ffffffffffffda5,
    0x3ffffffffffffd87,
    0x3ffffffffffffd69,
    0x3ffffffffffffd03,
    0x3ffffffffffffcfb,
    0x3ffffffffffffcf7,
    0x3ffffffffffffce9,
    0x3ffffffffffffcd3,
    0x3ffffffffffffcc1,
    0x3ffffffffffffc65,
    0x3ffffffffffffc2b,
    0x3ffffffffffffc1f,
    0x3ffffffffffffc17,
    0x3ffffffffffffc11,
    0x3ffffffffffffc07,
    0x3ffffffffffffb53,
    0x3ffffffffffffb27,
    0x3ffffffffffffaf3,
    0x3ffffffffffffab7,
    0x3ffffffffffffa67,
    0x3ffffffffffffa15,
    0x3ffffffffffff9ef,
    0x3ffffffffffff9d9,
    0x3ffffffffffff9d3,
    0x3ffffffffffff9c5,
    0x3ffffffffffff9af,
    0x3ffffffffffff977,
    0x3ffffffffffff95f,
    0x3ffffffffffff95b,
    0x3ffffffffffff959,
    0x3ffffffffffff8e1,
    0x3ffffffffffff8a7,
    0x3ffffffffffff889,
    0x3ffffffffffff87d,
    0x3ffffffffffff805,
    0x3ffffffffffff7e7,
    0x3ffffffffffff7c9,
    0x3ffffffffffff7a3,
    0x3ffffffffffff775,
    0x3ffffffffffff757,
    0x3ffffffffffff739,
    0x3ffffffffffff713,
    0x3ffffffffffff6d1,
    0x3ffffffffffff6c1,
    0x3ffffffffffff6b9,
    0x3ffffffffffff6a3,
    0x3ffffffffffff68b,
    0x3ffffffffffff631,
    0x3ffffffffffff613,
    0x3ffffffffffff5e9,
    0x3ffffffffffff59b,
    0x3ffffffffffff58d,
    0x3ffffffffffff53f,
    0x3ffffffffffff527,
    0x3ffffffffffff517,
    0x3ffffffffffff4d3,
    0x3ffffffffffff4b5,
    0x3ffffffffffff491,
    0x3ffffffffffff431,
    0x3ffffffffffff41f,
    0x3ffffffffffff36b,
    0x3ffffffffffff34d,
    0x3ffffffffffff349,
    0x3ffffffffffff347,
    0x3ffffffffffff341,
    0x3ffffffffffff30b,
    0x3ffffffffffff2cf,
    0x3ffffffffffff23f,
    0x3ffffffffffff22f,
    0x3ffffffffffff227,
    0x3ffffffffffff221,
    0x3ffffffffffff215,
    0x3ffffffffffff1a9,
    0x3ffffffffffff187,
    0x3ffffffffffff149,
    0x3ffffffffffff12b,
    0x3ffffffffffff125,
    0x3ffffffffffff0df,
    0x3ffffffffffff0a3,
    0x3fffffffffffefbd,
    0x3fffffffffffef69,
    0x3fffffffffffef4d,
    0x3fffffffffffef33,
    0x3fffffffffffeee7,
    0x3fffffffffffeecd,
    0x3fffffffffffee7b,
    0x3fffffffffffee33,
    0x3fffffffffffee0d,
    0x3fffffffffffeddf,
    0x3fffffffffffedcb,
    0x3fffffffffffed9d,
    0x3fffffffffffed53,
    0x3fffffffffffed31,
    0x3fffffffffffed2b,
    0x3fffffffffffed07,
    0x3fffffffffffecef,
    0x3fffffffffffeccb,
    0x3fffffffffffecb3,
    0x3fffffffffffec95,
    0x3fffffffffffec81,
    0x3fffffffffffec7b,
    0x3fffffffffffec75,
    0x3fffffffffffec41,
    0x3fffffffffffec11,
    0x3fffffffffffebf3,
    0x3fffffffffffebdf,
    0x3fffffffffffeb6f,
    0x3fffffffffffeb15,
    0x3fffffffffffeaef,
    0x3fffffffffffeabb,
    0x3fffffffffffeaa7,
];

/// `index`-th prime of the fixed sequence. The baked table is extended on
/// demand by a deterministic downward search, so every caller sees the same
/// sequence.
pub fn prime(index: usize) -> u64 {
    if index < PRIMES_62.len() {
        return PRIMES_62[index];
    }
    static EXTENDED: OnceLock<std::sync::Mutex<Vec<u64>>> = OnceLock::new();
    let cell = EXTENDED.get_or_init(|| std::sync::Mutex::new(PRIMES_62.to_vec()));
    let mut table = cell.lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= index {
        let mut candidate = *table.last().unwrap() - 2;
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        table.push(candidate);
    }
    table[index]
}

fn mul_mod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u128(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u128(r, b, m);
        }
        b = mul_mod_u128(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Prime field `ℤ/pℤ` for an odd `p < 2^62`. Elements are `u64` values in
/// Montgomery representation (`a·2^64 mod p`); use [`PrimeField::from_i64`]
/// and friends to enter, [`PrimeField::to_u64`] to leave.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
    /// `-p^{-1} mod 2^64`
    neg_inv: u64,
    /// `2^128 mod p`
    r2: u64,
    one: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 62), "modulus must be odd and below 2^62");
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = mul_mod_u128(r, r, p);
        Self {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
            one: r,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn zero(&self) -> u64 {
        0
    }

    #[inline]
    pub fn one(&self) -> u64 {
        self.one
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_u64(&self, a: u64) -> u64 {
        self.redc((a % self.p) as u128 * self.r2 as u128)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let r = a.abs() % self.p;
        let r = r.to_u64().expect("residue fits");
        let v = self.from_u64(r);
        if a.is_negative() {
            self.neg(v)
        } else {
            v
        }
    }

    /// Canonical residue in `[0, p)`.
    pub fn to_u64(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    /// Symmetric residue in `(-p/2, p/2]`.
    pub fn to_i64_symmetric(&self, a: u64) -> i64 {
        let v = self.to_u64(a);
        if v > self.p / 2 {
            v as i64 - self.p as i64
        } else {
            v as i64
        }
    }
}
