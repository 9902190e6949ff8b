mod common;

use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

use crl::algebra::IntPoly;
use crl::atom::{
    atom_probability, atom_probability_dp, atom_probability_with, bound_report, power_vector,
    walk_return_prob, AtomMethod, AtomVector,
};
use crl::experiment::bound_suite;
use crl::gaussian::GaussianRational;

use common::brute_atom_count;

fn vector() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-12i64..=12, 1..=14)
}

fn perm_and_flips(len: usize) -> impl Strategy<Value = (Vec<usize>, Vec<bool>)> {
    (
        Just((0..len).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), len),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumeration_matches_dp_and_brute_force(xs in vector()) {
        let xi = AtomVector::integers(&xs).unwrap();
        let dp = atom_probability_dp(&xi);
        let en = atom_probability_with(&xi, AtomMethod::Enumerate).unwrap();
        prop_assert_eq!(&dp.probability, &en.probability);
        prop_assert_eq!(dp.zero_count, BigUint::from(brute_atom_count(&xs)));
    }

    #[test]
    fn permutation_and_sign_invariance((xs, (perm, flips)) in vector().prop_flat_map(|v| {
        let len = v.len();
        (Just(v), perm_and_flips(len))
    })) {
        let xi = AtomVector::integers(&xs).unwrap();
        let moved = xi.transformed(&perm, &flips);
        prop_assert_eq!(atom_probability(&xi).probability, atom_probability(&moved).probability);
    }

    #[test]
    fn scaling_invariance(xs in vector(), k in prop_oneof![-7i64..=-1, 1i64..=7]) {
        let scaled: Vec<i64> = xs.iter().map(|x| x * k).collect();
        prop_assert_eq!(
            atom_probability(&AtomVector::integers(&xs).unwrap()).probability,
            atom_probability(&AtomVector::integers(&scaled).unwrap()).probability
        );
    }

    // Gaussian entries with zero imaginary part behave like the integers
    #[test]
    fn gaussian_mode_agrees_on_real_entries(xs in prop::collection::vec(-6i64..=6, 1..=10)) {
        let g: Vec<GaussianRational> = xs.iter().map(|&x| GaussianRational::from_integer(x)).collect();
        prop_assert_eq!(
            atom_probability(&AtomVector::gaussian(g).unwrap()).probability,
            atom_probability(&AtomVector::integers(&xs).unwrap()).probability
        );
    }
}

#[test]
fn walk_return_probability_decreases() {
    let mut prev = walk_return_prob(2);
    for m in (4..200).step_by(2) {
        let cur = walk_return_prob(m);
        assert!(cur < prev, "m={m}");
        prev = cur;
    }
    assert_eq!(walk_return_prob(7), BigRational::from_integer(0.into()));
}

#[test]
fn gaussian_unit_cycle() {
    // 1, i, -1, -i: zero iff the signs on opposite units cancel
    let units = ["1", "0:1", "-1", "0:-1"].map(|s| s.parse::<GaussianRational>().unwrap());
    let r = atom_probability(&AtomVector::gaussian(units.to_vec()).unwrap());
    assert_eq!(r.probability, common::rat(1, 4));
}

#[test]
fn golden_ratio_powers() {
    // φ^{k+2} = φ^{k+1} + φ^k: m=3 has two zero patterns out of eight
    let phi = IntPoly::from_i64s(&[-1, -1, 1]);
    let r = atom_probability(&power_vector(&phi, 3).unwrap());
    assert_eq!(r.probability, common::rat(1, 4));
    // cross-check m=6 against the real embedding by brute force on floats
    let phi_f = (1.0 + 5f64.sqrt()) / 2.0;
    let xs: Vec<f64> = (0..6).map(|k| phi_f.powi(k)).collect();
    let zeros = (0u32..64)
        .filter(|mask| {
            let s: f64 = xs.iter().enumerate().map(|(i, x)| if mask >> i & 1 == 1 { *x } else { -x }).sum();
            s.abs() < 1e-9
        })
        .count() as i64;
    let r6 = atom_probability(&power_vector(&phi, 6).unwrap());
    assert_eq!(r6.probability, common::rat(zeros, 64));
}

#[test]
fn vector_file_round_trip() {
    let xi = AtomVector::from_text("integer\n# comment\n3\n-3\n5\n").unwrap();
    assert_eq!(xi.len(), 3);
    let g = AtomVector::from_text("gaussian\n1:1\n1:-1\n2\n").unwrap();
    assert_eq!(atom_probability(&g).probability, common::rat(1, 4));
    assert!(AtomVector::from_text("").is_err());
    assert!(AtomVector::from_text("integer\nx\n").is_err());
}

#[test]
fn report_ratios() {
    let ones = AtomVector::integers(&[1; 10]).unwrap();
    let rep = bound_report(&ones);
    assert_eq!(rep.erdos_sharp_ratio, Some(1.0));
    assert_eq!(rep.couples, 100);
    assert!(rep.ss_ratio.is_none());
    let distinct = bound_report(&AtomVector::integers(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap());
    assert!(distinct.ss_ratio.is_some());
    assert_eq!(distinct.couples, 8);
}

#[test]
fn bound_suite_respects_the_classical_bounds() {
    let s = bound_suite();
    assert!(s.corpus_size >= 200);
    assert!(s.erdos_sharp_ratio.value <= 1.0 + 1e-12);
    assert!(s.halasz_ratio.value <= 4.0);
}
