//! Bivariate elimination and the two-variable common-root decision.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fpoly;
use super::gcd::{crt_combine, gcd_many};
use super::intpoly::{log2_upper, IntPoly};
use super::modp::{prime, PrimeField};
use crate::error::{invalid, Result};
use crate::numeric::{newton_polish, poly_roots};
use crate::poly::{BernoulliPolyMulti, ComplexPoint};

/// `Σ_k coeffs_y[k](x) · y^k` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarIntPoly {
    coeffs_y: Vec<IntPoly>,
}

impl BivarIntPoly {
    pub fn new(mut coeffs_y: Vec<IntPoly>) -> Self {
        while coeffs_y.last().is_some_and(IntPoly::is_zero) {
            coeffs_y.pop();
        }
        Self { coeffs_y }
    }

    /// Lifts a two-variable Bernoulli polynomial; `x = x_1`, `y = x_2`.
    pub fn from_bernoulli(p: &BernoulliPolyMulti) -> Result<Self> {
        if p.vars() != 2 {
            return invalid(format!("expected 2 variables, got {}", p.vars()));
        }
        let n = p.degree();
        let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for (e, s) in p.terms() {
            table[e[1] as usize][e[0] as usize] = BigInt::from(s.value());
        }
        Ok(Self::new(table.into_iter().map(IntPoly::new).collect()))
    }

    pub fn coeffs_y(&self) -> &[IntPoly] {
        &self.coeffs_y
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs_y.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs_y.len().checked_sub(1)
    }

    pub fn degree_x(&self) -> usize {
        self.coeffs_y
            .iter()
            .filter_map(IntPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.coeffs_y
            .iter()
            .enumerate()
            .filter_map(|(k, c)| c.degree().map(|d| d + k))
            .max()
            .unwrap_or(0)
    }

    /// Specialises `x` to an integer, giving a polynomial in `y`.
    pub fn at_x(&self, x: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs_y.iter().map(|c| c.eval(x)).collect())
    }

    /// Coefficients in `y` at a complex `x`.
    fn at_x_complex(&self, x: Complex64) -> Vec<Complex64> {
        self.coeffs_y.iter().map(|c| c.eval_f64(x)).collect()
    }

    /// Value, `∂/∂x`, `∂/∂y` at `(x, y)`.
    fn eval_grad(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut v, mut dx, mut dy) = (zero, zero, zero);
        for c in self.coeffs_y.iter().rev() {
            let coeffs: Vec<Complex64> = c
                .coeffs()
                .iter()
                .map(|a| Complex64::new(a.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect();
            let (cv, cd) = crate::numeric::eval_with_derivative(&coeffs, x);
            dy = dy * y + v;
            v = v * y + cv;
            dx = dx * y + cd;
        }
        (v, dx, dy)
    }

    /// `Σ |c_ab| |x|^a |y|^b`.
    fn abs_scale(&self, x: Complex64, y: Complex64) -> f64 {
        let (rx, ry) = (x.norm(), y.norm());
        self.coeffs_y.iter().rev().fold(0.0, |acc, c| {
            let s = c
                .coeffs()
                .iter()
                .rev()
                .fold(0.0, |a, k| a * rx + k.to_f64().unwrap_or(f64::INFINITY).abs());
            acc * ry + s
        })
    }

    fn relative_residual(&self, x: Complex64, y: Complex64) -> f64 {
        let v = self.eval_grad(x, y).0.norm();
        let s = self.abs_scale(x, y);
        if s == 0.0 {
            0.0
        } else {
            v / s
        }
    }

    fn row_log2_norm(&self) -> f64 {
        let sq: BigUint = self
            .coeffs_y
            .iter()
            .map(|c| {
                let n1 = c.norm1();
                &n1 * &n1
            })
            .sum();
        0.5 * log2_upper(&sq)
    }
}

fn eval_mod(field: &PrimeField, coeffs: &[u64], x: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

/// Interpolating polynomial through `(xs[i], ys[i])`, Newton form converted
/// to monomial coefficients. All values in Montgomery form.
fn interpolate(field: &PrimeField, xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = field.sub(dd[i], dd[i - 1]);
            let den = field.sub(xs[i], xs[i - level]);
            dd[i] = field.mul(num, field.inv(den));
        }
    }
    // Horner on the Newton basis
    let mut coeffs = vec![0u64; n];
    for i in (0..n).rev() {
        // coeffs = coeffs · (x - xs[i]) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if coeffs[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = field.add(next[k + 1], coeffs[k]);
            }
            next[k] = field.sub(next[k], field.mul(coeffs[k], xs[i]));
        }
        next[0] = field.add(next[0], dd[i]);
        coeffs = next;
    }
    coeffs
}

/// `Res_y(P, Q) ∈ ℤ[x]`, exact.
///
/// Evaluates at enough integer points modulo each prime of the fixed
/// sequence, interpolates, and lifts by CRT. The number of evaluation points
/// comes from the Sylvester structure `deg_y Q · deg_x P + deg_y P · deg_x Q`,
/// not from the total-degree product, so the Bezout bound on the output
/// degree is an observation rather than an assumption.
pub fn eliminate_y(p: &BivarIntPoly, q: &BivarIntPoly) -> Result<IntPoly> {
    if p.is_zero() || q.is_zero() {
        return invalid("elimination with a zero polynomial");
    }
    let (dp, dq) = (p.degree_y().unwrap(), q.degree_y().unwrap());
    if dp == 0 || dq == 0 {
        return invalid("elimination needs positive degree in y");
    }
    let degree_bound = dq * p.degree_x() + dp * q.degree_x();
    let needed_bits = dq as f64 * p.row_log2_norm() + dp as f64 * q.row_log2_norm() + 2.0;

    let mut modulus = BigInt::one();
    let mut lifted: Vec<BigInt> = vec![BigInt::zero(); degree_bound + 1];
    let mut have_bits = 0.0;
    let mut index = 0;
    while have_bits < needed_bits {
        let pr = prime(index);
        index += 1;
        let field = PrimeField::new(pr);
        let pc: Vec<Vec<u64>> = p.coeffs_y.iter().map(|c| fpoly::reduce(&field, c)).collect();
        let qc: Vec<Vec<u64>> = q.coeffs_y.iter().map(|c| fpoly::reduce(&field, c)).collect();
        if pc[dp].is_empty() || qc[dq].is_empty() {
            continue;
        }
        let mut xs = Vec::with_capacity(degree_bound + 1);
        let mut ys = Vec::with_capacity(degree_bound + 1);
        let mut x0 = 0u64;
        while xs.len() <= degree_bound {
            let xm = field.from_u64(x0);
            x0 += 1;
            if eval_mod(&field, &pc[dp], xm) == 0 || eval_mod(&field, &qc[dq], xm) == 0 {
                continue;
            }
            let a: Vec<u64> = pc.iter().map(|c| eval_mod(&field, c, xm)).collect();
            let b: Vec<u64> = qc.iter().map(|c| eval_mod(&field, c, xm)).collect();
            xs.push(xm);
            ys.push(fpoly::resultant(&field, &a, &b));
        }
        let coeffs = interpolate(&field, &xs, &ys);
        lifted = lifted
            .iter()
            .zip(&coeffs)
            .map(|(acc, &c)| crt_combine(acc, &modulus, field.to_i64_symmetric(c), pr))
            .collect();
        modulus *= pr;
        have_bits += 61.0;
    }
    let half = &modulus >> 1;
    Ok(IntPoly::new(
        lifted
            .into_iter()
            .map(|c| {
                let c = c.mod_floor(&modulus);
                if c > half {
                    c - &modulus
                } else {
                    c
                }
            })
            .collect(),
    ))
}

/// Verdict of the two-variable common-root test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CommonRoot2d {
    Yes { witness: ComplexPoint },
    No,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftOptions {
    /// Relative residual below which a lifted point counts as a common root.
    pub accept_tol: f64,
    /// Relative residual above which a candidate is rejected outright.
    pub reject_tol: f64,
    /// Newton iterations on the square system `P_1 = P_2 = 0`.
    pub newton_steps: usize,
}

impl Default for LiftOptions {
    fn default() -> Self {
        Self {
            accept_tol: 1e-8,
            reject_tol: 1e-4,
            newton_steps: 3,
        }
    }
}

/// Common complex root of three or more two-variable Bernoulli polynomials.
pub fn common_root_exists_2d(polys: &[BernoulliPolyMulti]) -> Result<CommonRoot2d> {
    common_root_exists_2d_with(polys, LiftOptions::default())
}

/// Elimination pipeline: `g = gcd_k Res_y(P_1, P_k)`; constant `g` is a
/// certified `No`. Integer roots `0, ±1` of `g` are settled exactly through
/// the GCD of the specialised polynomials in `y`; any remaining factor is
/// solved numerically and lifted, with `Undecided` when the residuals fall
/// between the two tolerances.
pub fn common_root_exists_2d_with(
    polys: &[BernoulliPolyMulti],
    opts: LiftOptions,
) -> Result<CommonRoot2d> {
    if polys.len() < 3 {
        return invalid("two-variable common-root test needs at least three polynomials");
    }
    let bivs = polys
        .iter()
        .map(BivarIntPoly::from_bernoulli)
        .collect::<Result<Vec<_>>>()?;
    if bivs.iter().any(|b| b.degree_y().unwrap_or(0) == 0) {
        return invalid("polynomials must have positive degree");
    }
    let mut eliminants = Vec::with_capacity(bivs.len() - 1);
    for other in &bivs[1..] {
        eliminants.push(eliminate_y(&bivs[0], other)?);
    }
    if eliminants.iter().all(IntPoly::is_zero) {
        // every P_k shares a factor with P_1; decidable here only when they
        // all coincide up to sign, in which case Z(P_1) is a whole curve
        let same_curve = polys[1..]
            .iter()
            .all(|p| *p == polys[0] || *p == polys[0].negated());
        if !same_curve {
            return Ok(CommonRoot2d::Undecided);
        }
        let x = Complex64::new(0.5, 0.0);
        let y = poly_roots(&bivs[0].at_x_complex(x))
            .first()
            .copied()
            .unwrap_or_default();
        let witness = ComplexPoint::new(vec![x, y])?;
        return Ok(CommonRoot2d::Yes { witness });
    }
    let mut g = gcd_many(&eliminants)?;
    if g.is_constant() {
        return Ok(CommonRoot2d::No);
    }

    for r in [0i64, 1, -1] {
        let root = IntPoly::linear_root(r);
        let mut found = false;
        while let Some(q) = g.div_exact(&root) {
            g = q;
            found = true;
        }
        if !found {
            continue;
        }
        let xb = BigInt::from(r);
        let fibres: Vec<IntPoly> = bivs.iter().map(|b| b.at_x(&xb)).collect();
        let h = gcd_many(&fibres)?;
        if !h.is_constant() {
            let coeffs: Vec<Complex64> = h
                .coeffs()
                .iter()
                .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect();
            let y = poly_roots(&coeffs)
                .first()
                .copied()
                .unwrap_or_else(|| Complex64::new(0.0, 0.0));
            let witness = ComplexPoint::new(vec![Complex64::new(r as f64, 0.0), y])?;
            return Ok(CommonRoot2d::Yes { witness });
        }
    }
    if g.is_constant() {
        return Ok(CommonRoot2d::No);
    }

    let gc = scaled_complex_coeffs(&g);
    let mut best = f64::INFINITY;
    for x0 in poly_roots(&gc) {
        let x0 = newton_polish(&gc, x0, 4);
        let fibre = bivs[0].at_x_complex(x0);
        for y0 in poly_roots(&fibre) {
            let (x, y) = refine_pair(&bivs[0], &bivs[1], x0, y0, opts.newton_steps);
            let score = bivs
                .iter()
                .map(|b| b.relative_residual(x, y))
                .fold(0.0, f64::max);
            if score <= opts.accept_tol {
                if let Ok(witness) = ComplexPoint::new(vec![x, y]) {
                    return Ok(CommonRoot2d::Yes { witness });
                }
            }
            best = best.min(score);
        }
    }
    if best >= opts.reject_tol {
        Ok(CommonRoot2d::No)
    } else {
        Ok(CommonRoot2d::Undecided)
    }
}

/// Newton iterations on `(P, Q) = 0` from `(x, y)`, keeping the best point.
fn refine_pair(
    p: &BivarIntPoly,
    q: &BivarIntPoly,
    x: Complex64,
    y: Complex64,
    steps: usize,
) -> (Complex64, Complex64) {
    let score = |x: Complex64, y: Complex64| p.relative_residual(x, y).max(q.relative_residual(x, y));
    let mut best = (x, y);
    let mut best_score = score(x, y);
    let (mut cx, mut cy) = (x, y);
    for _ in 0..steps {
        let (pv, px, py) = p.eval_grad(cx, cy);
        let (qv, qx, qy) = q.eval_grad(cx, cy);
        let det = px * qy - py * qx;
        if det.norm() == 0.0 {
            break;
        }
        cx -= (pv * qy - py * qv) / det;
        cy -= (px * qv - pv * qx) / det;
        if !(cx.re.is_finite() && cx.im.is_finite() && cy.re.is_finite() && cy.im.is_finite()) {
            break;
        }
        let s = score(cx, cy);
        if s < best_score {
            best = (cx, cy);
            best_score = s;
        }
    }
    best
}

/// Coefficients as `Complex64`, normalised so the largest has magnitude 1.
fn scaled_complex_coeffs(p: &IntPoly) -> Vec<Complex64> {
    let shift = p.max_abs().bits().saturating_sub(900) as usize;
    let vals: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| (c >> shift).to_f64().unwrap_or(0.0))
        .collect();
    let top = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    vals.into_iter()
        .map(|v| Complex64::new(v / top, 0.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Sign;
    use crate::rng::Seed;

    fn biv(rows: &[&[i64]]) -> BivarIntPoly {
        BivarIntPoly::new(rows.iter().map(|r| IntPoly::from_i64s(r)).collect())
    }

    #[test]
    fn small_eliminations() {
        // y - x and y + x: Res_y = -2x up to sign
        let p = biv(&[&[0, -1], &[1]]);
        let q = biv(&[&[0, 1], &[1]]);
        let r = eliminate_y(&p, &q).unwrap();
        assert_eq!(r.degree(), Some(1));
        assert!(r.coeff(0).is_zero());
        assert_eq!(r.coeff(1).magnitude(), &BigUint::from(2u32));
        // y - x and y - 1: Res_y = ±(x - 1)
        let q = biv(&[&[-1], &[1]]);
        let r = eliminate_y(&p, &q).unwrap();
        assert!(r == IntPoly::from_i64s(&[-1, 1]) || r == IntPoly::from_i64s(&[1, -1]));
    }

    #[test]
    fn rejects_y_free_and_zero() {
        let p = biv(&[&[0, -1], &[1]]);
        assert!(eliminate_y(&p, &biv(&[&[1, 1]])).is_err());
        assert!(eliminate_y(&p, &BivarIntPoly::new(vec![])).is_err());
    }

    #[test]
    fn non_unit_leading_coefficient() {
        // P = x·y^2 + y + 1, Q = y - x
        // Res_y(P, Q) = P(x, x) up to sign = x^3 + x + 1
        let p = biv(&[&[1], &[1], &[0, 1]]);
        let q = biv(&[&[0, -1], &[1]]);
        let r = eliminate_y(&p, &q).unwrap();
        let want = IntPoly::from_i64s(&[1, 1, 0, 1]);
        assert!(r == want || r == want.neg(), "{r}");
    }

    #[test]
    fn bezout_degree_bound_on_random_pairs() {
        for k in 0..30u64 {
            let n = 2 + (k % 4) as usize;
            let a = BernoulliPolyMulti::sample(2, n, Seed::new(12, 2 * k)).unwrap();
            let b = BernoulliPolyMulti::sample(2, n, Seed::new(12, 2 * k + 1)).unwrap();
            let r = eliminate_y(
                &BivarIntPoly::from_bernoulli(&a).unwrap(),
                &BivarIntPoly::from_bernoulli(&b).unwrap(),
            )
            .unwrap();
            assert!(r.degree_or_zero() <= n * n);
        }
    }

    #[test]
    fn identical_triples_have_common_roots() {
        for k in 0..10u64 {
            let p = BernoulliPolyMulti::sample(2, 1 + (k % 4) as usize, Seed::new(77, k)).unwrap();
            let out = common_root_exists_2d(&[p.clone(), p.negated(), p.clone()]).unwrap();
            let CommonRoot2d::Yes { witness } = out else {
                panic!("expected Yes, got {out:?}");
            };
            assert!(p.eval(&witness).unwrap().norm() < 1e-8);
        }
    }

    #[test]
    fn parallel_lines_have_no_common_root() {
        // P1 = 1 + y + x, P2 = -1 + y + x, P3 = -P2
        let s = |v: [i64; 3]| {
            v.iter()
                .map(|&s| if s > 0 { Sign::Plus } else { Sign::Minus })
                .collect::<Vec<_>>()
        };
        let p1 = BernoulliPolyMulti::from_signs(2, 1, s([1, 1, 1])).unwrap();
        let p2 = BernoulliPolyMulti::from_signs(2, 1, s([-1, 1, 1])).unwrap();
        let out = common_root_exists_2d(&[p1, p2.clone(), p2.negated()]).unwrap();
        assert_eq!(out, CommonRoot2d::No);
    }

    #[test]
    fn shared_zero_set_without_p1_root_is_no() {
        let mut checked = 0;
        for k in 0..40u64 {
            let p1 = BernoulliPolyMulti::sample(2, 3, Seed::new(31, 2 * k)).unwrap();
            let p2 = BernoulliPolyMulti::sample(2, 3, Seed::new(31, 2 * k + 1)).unwrap();
            let g = eliminate_y(
                &BivarIntPoly::from_bernoulli(&p1).unwrap(),
                &BivarIntPoly::from_bernoulli(&p2).unwrap(),
            )
            .unwrap();
            if g.is_zero() {
                continue;
            }
            // P3 = -P2 has the same zero set as P2, so the system reduces to
            // P1 = P2 = 0, which is generically solvable: expect Yes.
            let out = common_root_exists_2d(&[p1, p2.clone(), p2.negated()]).unwrap();
            assert!(matches!(out, CommonRoot2d::Yes { .. }), "{out:?}");
            checked += 1;
        }
        assert!(checked > 30);
    }

    #[test]
    fn planted_root_at_one_minus_one() {
        // d = 2, n = 2 has 6 coefficients; force P(1, -1) = 0 by sign choice
        let signs = |v: [i64; 6]| {
            v.iter()
                .map(|&s| if s > 0 { Sign::Plus } else { Sign::Minus })
                .collect::<Vec<_>>()
        };
        // monomials (0,0) (0,1) (1,0) (0,2) (1,1) (2,0) at (1,-1): 1 -1 1 1 -1 1
        let a = BernoulliPolyMulti::from_signs(2, 2, signs([1, 1, -1, 1, -1, -1])).unwrap();
        let b = BernoulliPolyMulti::from_signs(2, 2, signs([1, 1, 1, 1, 1, -1])).unwrap();
        let c = BernoulliPolyMulti::from_signs(2, 2, signs([-1, -1, 1, 1, 1, -1])).unwrap();
        let pt = ComplexPoint::real(&[1.0, -1.0]).unwrap();
        for p in [&a, &b, &c] {
            assert_eq!(p.eval(&pt).unwrap().norm(), 0.0);
        }
        let out = common_root_exists_2d(&[a, b, c]).unwrap();
        let CommonRoot2d::Yes { witness } = out else {
            panic!("expected a common root, got {out:?}");
        };
        assert_eq!(witness.coords()[0], Complex64::new(1.0, 0.0));
    }
}
