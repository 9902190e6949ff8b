//! Coprimality screen over the fixed small field `F_p`, `p = 32749`.
//!
//! With the modulus a compile-time constant every reduction compiles to a
//! multiply and shift, and all intermediate values fit in `u32`. When the
//! leading coefficients survive reduction, coprimality mod `p` certifies a
//! nonzero integer resultant.

pub(crate) const P: u32 = 32_749;

#[inline]
fn mul(a: u32, b: u32) -> u32 {
    a * b % P
}

fn inv(a: u32) -> u32 {
    let mut base = a;
    let mut e = P - 2;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Lifts integer coefficients (lowest degree first) into `[0, p)`.
pub(crate) fn lift(coeffs: impl IntoIterator<Item = i64>) -> Vec<u32> {
    coeffs
        .into_iter()
        .map(|c| c.rem_euclid(P as i64) as u32)
        .collect()
}

/// True when `a` and `b` have a constant GCD in `F_p[x]`. Both must be nonzero.
pub(crate) fn coprime(a: &[u32], b: &[u32]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            return true;
        }
        let db = b.len() - 1;
        let inv_lead = inv(b[db]);
        if a.len() == db + 2 {
            // quotient q1·x + q0 in one pass; a[i] + q1·b[i-1] + q0·b[i] < 2^31
            let da = db + 1;
            let q1 = P - mul(a[da], inv_lead);
            let second = (a[da - 1] + q1 * b[db - 1]) % P;
            let q0 = P - mul(second, inv_lead);
            a[0] = (a[0] + q0 * b[0]) % P;
            for i in 1..db {
                a[i] = (a[i] + q1 * b[i - 1] + q0 * b[i]) % P;
            }
            a.truncate(db);
            trim(&mut a);
        }
        while a.len() > db {
            let top = *a.last().unwrap();
            let k = a.len() - 1 - db;
            if top != 0 {
                let q = P - mul(top, inv_lead);
                for (x, &y) in a[k..k + db].iter_mut().zip(&b[..db]) {
                    *x = (*x + q * y) % P;
                }
            }
            a.pop();
            trim(&mut a);
        }
        if a.is_empty() {
            return false;
        }
        std::mem::swap(&mut a, &mut b);
    }
}
