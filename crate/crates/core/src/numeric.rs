//! Floating-point root extraction: Aberth–Ehrlich iteration plus Newton
//! polishing. Used for witnesses and for oracles, never for exact decisions.

use num_complex::Complex64;

use crate::poly::BernoulliPolyUni;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Value and derivative at `x` of `Σ coeffs[i] x^i`.
pub fn eval_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut value = ZERO;
    let mut deriv = ZERO;
    for &c in coeffs.iter().rev() {
        deriv = deriv * x + value;
        value = value * x + c;
    }
    (value, deriv)
}

/// `Σ |coeffs[i]| |x|^i`, the natural scale for a residual at `x`.
pub fn abs_scale(coeffs: &[Complex64], x: Complex64) -> f64 {
    let r = x.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// `|P(x)| / Σ |c_i||x|^i`.
pub fn relative_residual(coeffs: &[Complex64], x: Complex64) -> f64 {
    let (v, _) = eval_with_derivative(coeffs, x);
    let s = abs_scale(coeffs, x);
    if s == 0.0 {
        0.0
    } else {
        v.norm() / s
    }
}

/// Newton steps from `x`, keeping the best iterate by residual.
pub fn newton_polish(coeffs: &[Complex64], x: Complex64, steps: usize) -> Complex64 {
    let mut best = x;
    let mut best_res = eval_with_derivative(coeffs, x).0.norm();
    let mut cur = x;
    for _ in 0..steps {
        let (v, d) = eval_with_derivative(coeffs, cur);
        if d.norm() == 0.0 || v.norm() == 0.0 {
            break;
        }
        cur -= v / d;
        if !cur.re.is_finite() || !cur.im.is_finite() {
            break;
        }
        let res = eval_with_derivative(coeffs, cur).0.norm();
        if res < best_res {
            best = cur;
            best_res = res;
        }
    }
    best
}

/// All complex roots (with multiplicity) of `Σ coeffs[i] x^i` by
/// simultaneous Aberth–Ehrlich iteration, followed by one Newton pass each.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| *z == ZERO) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let zeros = c.iter().take_while(|z| **z == ZERO).count();
    c.drain(..zeros);
    let mut roots = vec![ZERO; zeros];
    let n = c.len() - 1;
    if n == 0 {
        return roots;
    }
    if n == 1 {
        roots.push(-c[0] / c[1]);
        return roots;
    }
    let found = aberth(&c);
    roots.extend(found.into_iter().map(|z| newton_polish(&c, z, 1)));
    roots
}

const ABERTH_MAX_ITER: usize = 600;

fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    // start on a circle of the geometric-mean radius, off the real axis
    let radius = (c[0].norm() / c[n].norm()).powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, t)
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..ABERTH_MAX_ITER {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (v, d) = eval_with_derivative(c, z[k]);
            if v == ZERO {
                done[k] = true;
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff == ZERO {
                        ZERO
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // perturb away from a critical point
                z[k] += Complex64::new(radius * 1e-3, radius * 1e-3);
                all_done = false;
                continue;
            }
            z[k] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[k].norm().max(f64::MIN_POSITIVE) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

pub fn real_roots_to_complex(coeffs: &[f64]) -> Vec<Complex64> {
    poly_roots(&coeffs.iter().map(|&r| Complex64::new(r, 0.0)).collect::<Vec<_>>())
}

/// Roots of a Bernoulli polynomial, Newton-polished until stable.
pub fn bernoulli_roots(p: &BernoulliPolyUni) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|s| Complex64::new(s.value() as f64, 0.0))
        .collect();
    poly_roots(&coeffs)
        .into_iter()
        .map(|z| newton_polish(&coeffs, z, 8))
        .collect()
}

/// Root-matching test: some root of `p` lies within `tol` (relative to
/// `max(1, |root|)`) of some root of `q`.
pub fn roots_intersect(roots_p: &[Complex64], roots_q: &[Complex64], tol: f64) -> bool {
    roots_p.iter().any(|a| {
        roots_q
            .iter()
            .any(|b| (a - b).norm() <= tol * a.norm().max(1.0))
    })
}
