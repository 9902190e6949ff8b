mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use crl::algebra::{
    certify_resultant, common_root_decision, common_root_exists, common_root_exists_2d, eliminate_y,
    gcd_int, modular_resultant_filter, resultant, BivarIntPoly, CommonRoot2d, DecisionStage, IntPoly,
    PipelineOptions, ResultantVerdict,
};
use crl::poly::{BernoulliPolyMulti, BernoulliPolyUni, Sign};
use crl::rng::Seed;

use common::{rational_gcd_degree, sylvester_resultant};

fn bern(n: usize) -> impl Strategy<Value = BernoulliPolyUni> {
    prop::collection::vec(any::<bool>(), n + 1).prop_map(|bits| {
        BernoulliPolyUni::from_signs(bits.into_iter().map(|b| if b { Sign::Plus } else { Sign::Minus }).collect())
            .unwrap()
    })
}

fn bern_pair(max_n: usize) -> impl Strategy<Value = (BernoulliPolyUni, BernoulliPolyUni)> {
    (1..=max_n).prop_flat_map(|n| (bern(n), bern(n)))
}

fn small_int_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-5i64..=5, 1..6)
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
        .prop_map(|v| IntPoly::from_i64s(&v))
}

#[test]
fn gcd_textbook_cases() {
    let p = IntPoly::from_i64s;
    assert_eq!(gcd_int(&p(&[-1, 0, 1]), &p(&[1, 1])).unwrap(), p(&[1, 1]));
    assert_eq!(gcd_int(&p(&[1, 0, 1]), &p(&[-1, 0, 1])).unwrap(), p(&[1]));
    let f = p(&[6, -4, 2]);
    assert_eq!(gcd_int(&f, &f).unwrap(), f.primitive_part());
    assert!(gcd_int(&IntPoly::zero(), &IntPoly::zero()).is_err());
}

#[test]
fn degree_eight_resultants_match_sylvester_determinant() {
    let mut rng = Seed::new(8, 8).stream();
    for _ in 0..20 {
        let f = IntPoly::from_bernoulli(&BernoulliPolyUni::sample_from(&mut rng, 8));
        let g = IntPoly::from_bernoulli(&BernoulliPolyUni::sample_from(&mut rng, 8));
        assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g));
    }
}

#[test]
fn certify_never_undecided() {
    let mut rng = Seed::new(3, 1).stream();
    for _ in 0..200 {
        let n = 1 + rng.next_below(12) as usize;
        let f = IntPoly::from_bernoulli(&BernoulliPolyUni::sample_from(&mut rng, n));
        let g = IntPoly::from_bernoulli(&BernoulliPolyUni::sample_from(&mut rng, n));
        let verdict = certify_resultant(&f, &g, 2).unwrap();
        let shared = gcd_int(&f, &g).unwrap().degree_or_zero() >= 1;
        match verdict {
            ResultantVerdict::NonzeroCertified { .. } => assert!(!shared),
            ResultantVerdict::ZeroCertified { gcd_degree } => {
                assert!(shared);
                assert_eq!(gcd_degree, rational_gcd_degree(&f_i64(&f), &f_i64(&g)));
            }
            ResultantVerdict::Undecided { .. } => panic!("certify returned Undecided"),
        }
    }
}

fn f_i64(p: &IntPoly) -> Vec<i64> {
    p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

// Coprime ±1 pairs almost never vanish modulo two 62-bit primes, so
// escalation to the exact GCD stays rare.
#[test]
fn false_escalation_is_rare() {
    let mut rng = Seed::new(32, 0).stream();
    let mut coprime = 0;
    let mut escalated = 0;
    while coprime < 10_000 {
        let p = BernoulliPolyUni::sample_from(&mut rng, 32);
        let q = BernoulliPolyUni::sample_from(&mut rng, 32);
        let (fi, gi) = (IntPoly::from_bernoulli(&p), IntPoly::from_bernoulli(&q));
        if gcd_int(&fi, &gi).unwrap().degree_or_zero() >= 1 {
            continue;
        }
        coprime += 1;
        if !modular_resultant_filter(&fi, &gi, 2).is_nonzero() {
            escalated += 1;
        }
    }
    assert!(escalated * 100 < coprime, "{escalated} escalations in {coprime}");
}

#[test]
fn planted_common_factor_is_found() {
    // (1 - x^6)/(1 + x) and (1 - x^6)/(1 - x) share x^4 + x^2 + 1
    let a = BernoulliPolyUni::from_signs("+-+-+-".chars().map(|c| Sign::from_char(c).unwrap()).collect()).unwrap();
    let b = BernoulliPolyUni::from_signs("++++++".chars().map(|c| Sign::from_char(c).unwrap()).collect()).unwrap();
    assert!(common_root_exists(&a, &b));
    let g = gcd_int(&IntPoly::from_bernoulli(&a), &IntPoly::from_bernoulli(&b)).unwrap();
    assert_eq!(g, IntPoly::from_i64s(&[1, 0, 1, 0, 1]));
}

#[test]
fn two_variable_needs_three_polynomials() {
    let mut rng = Seed::new(2, 2).stream();
    let p = BernoulliPolyMulti::sample_from(&mut rng, 2, 3).unwrap();
    let q = BernoulliPolyMulti::sample_from(&mut rng, 2, 3).unwrap();
    assert!(common_root_exists_2d(&[p, q]).is_err());
}

#[test]
fn two_variable_witnesses_are_common_roots() {
    let mut rng = Seed::new(21, 0).stream();
    let mut yes = 0;
    for _ in 0..400 {
        let polys: Vec<_> = (0..3).map(|_| BernoulliPolyMulti::sample_from(&mut rng, 2, 2).unwrap()).collect();
        if let CommonRoot2d::Yes { witness } = common_root_exists_2d(&polys).unwrap() {
            yes += 1;
            for p in &polys {
                assert!(p.eval(&witness).unwrap().norm() < 1e-6);
            }
        }
    }
    assert!(yes > 0);
}

#[test]
fn elimination_commutes_with_integer_specialisation() {
    let mut rng = Seed::new(4, 4).stream();
    for _ in 0..50 {
        let p = BernoulliPolyMulti::sample_from(&mut rng, 2, 3).unwrap();
        let q = BernoulliPolyMulti::sample_from(&mut rng, 2, 3).unwrap();
        let bp = BivarIntPoly::from_bernoulli(&p).unwrap();
        let bq = BivarIntPoly::from_bernoulli(&q).unwrap();
        let r = eliminate_y(&bp, &bq).unwrap();
        // specialising x to an integer commutes with elimination when both
        // leading coefficients in y survive
        for x in [-2i64, 2, 3] {
            let (px, qx) = (bp.at_x(&BigInt::from(x)), bq.at_x(&BigInt::from(x)));
            if px.degree() == bp.degree_y() && qx.degree() == bq.degree_y() && !px.is_constant() && !qx.is_constant() {
                let direct = sylvester_resultant(&px, &qx);
                assert_eq!(r.eval(&BigInt::from(x)).is_zero(), direct.is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn resultant_zero_iff_shared_factor((p, q) in bern_pair(32)) {
        let (f, g) = (IntPoly::from_bernoulli(&p), IntPoly::from_bernoulli(&q));
        let zero = resultant(&f, &g).unwrap().is_zero();
        prop_assert_eq!(zero, rational_gcd_degree(&p.coeff_values(), &q.coeff_values()) >= 1);
        prop_assert_eq!(zero, common_root_exists(&p, &q));
    }

    #[test]
    fn crt_resultant_matches_bareiss((p, q) in bern_pair(12)) {
        let (f, g) = (IntPoly::from_bernoulli(&p), IntPoly::from_bernoulli(&q));
        prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g));
    }

    #[test]
    fn resultant_is_multiplicative(f in small_int_poly(), g in small_int_poly(), h in small_int_poly()) {
        prop_assume!(f.degree_or_zero() >= 1 && g.degree_or_zero() >= 1 && h.degree_or_zero() >= 1);
        let lhs = resultant(&f.mul(&g), &h).unwrap();
        let rhs = resultant(&f, &h).unwrap() * resultant(&g, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_and_is_primitive(f in small_int_poly(), g in small_int_poly(), c in small_int_poly()) {
        let (f, g) = (f.mul(&c), g.mul(&c));
        let h = gcd_int(&f, &g).unwrap();
        prop_assert!(f.div_exact(&h).is_some());
        prop_assert!(g.div_exact(&h).is_some());
        prop_assert!(h.content().is_one());
        prop_assert!(h.leading().unwrap() > &BigInt::zero());
        // the planted factor's primitive part divides the gcd
        if !c.is_constant() {
            prop_assert!(h.div_exact(&c.primitive_part()).is_some());
        }
        prop_assert_eq!(h.degree_or_zero(), rational_gcd_degree(&f_i64(&f), &f_i64(&g)));
    }

    // every pipeline stage agrees with the exact gcd
    #[test]
    fn pipeline_is_sound((p, q) in bern_pair(40), budget in 0usize..3, filter in any::<bool>()) {
        let opts = PipelineOptions { pm1_filter: filter, prime_budget: budget };
        let (decision, stage) = common_root_decision(&[p.clone(), q.clone()], opts);
        let truth = rational_gcd_degree(&p.coeff_values(), &q.coeff_values()) >= 1;
        prop_assert_eq!(decision, truth);
        match stage {
            DecisionStage::Pm1Accept => prop_assert!(decision && filter),
            DecisionStage::ModularReject => prop_assert!(!decision && budget > 0),
            DecisionStage::ExactGcd => {}
        }
    }

    #[test]
    fn sign_flip_keeps_decision((p, q) in bern_pair(20)) {
        prop_assert_eq!(common_root_exists(&p, &q), common_root_exists(&p.negated(), &q));
        prop_assert_eq!(common_root_exists(&p, &q), common_root_exists(&q, &p));
    }
}

#[test]
fn resultant_of_linear_factors() {
    let p = IntPoly::from_i64s;
    assert_eq!(resultant(&p(&[-1, 1]), &p(&[1, 1])).unwrap(), BigInt::from(2));
    assert!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap().is_zero());
    assert_eq!(resultant(&p(&[1]), &p(&[3, 1])).unwrap(), BigInt::one());
}
