mod common;

use common::*;
use num_rational::BigRational;
use num_traits::Signed;
use polyzero::complexroots::all_roots_seeded;
use polyzero::realroots::{isolate_real_roots, refine_root, sturm_count};
use polyzero::{ExactPoly, FamilySpec};
use proptest::prelude::*;

fn h_oracle(k: usize, l: i32) -> Vec<BigRational> {
    let mut c = f_coeffs((k as i32 - l - 1) as usize);
    for _ in 0..l + 2 {
        c = integrate_minus_one(&c);
    }
    c
}

fn d_oracle(j: usize, l: usize) -> Vec<BigRational> {
    let mut c = f_coeffs(j + l);
    for _ in 0..l {
        c = differentiate(&c);
    }
    trimmed(c)
}

#[test]
fn families_match_coefficient_calculus() {
    for k in 1..=25u32 {
        assert_eq!(FamilySpec::f(k).build().unwrap().coeffs(), f_coeffs(k as usize).as_slice());
        assert_eq!(FamilySpec::i(k).build().unwrap().coeffs(), integrate_minus_one(&f_coeffs(k as usize)).as_slice());
    }
    for l in 1..=5u32 {
        for j in 1..=20u32 {
            let got = FamilySpec::d(j, l).build().unwrap();
            assert_eq!(got.coeffs(), d_oracle(j as usize, l as usize).as_slice(), "D j={j} l={l}");
        }
    }
    for l in -1..=4i32 {
        for k in (l + 2) as u32..=24 {
            let got = FamilySpec::h(k, l).build().unwrap();
            assert_eq!(got.coeffs(), h_oracle(k as usize, l).as_slice(), "H k={k} l={l}");
        }
    }
}

#[test]
fn h_with_minus_one_is_first_integral() {
    for k in 2..=20 {
        assert_eq!(FamilySpec::h(k, -1).build().unwrap(), FamilySpec::i(k).build().unwrap());
    }
}

fn check_real_roots(p: &ExactPoly, label: &str) {
    let tol = polyzero::rational::pow10_inv(12);
    let ivs = isolate_real_roots(p).unwrap();
    let oracle = companion_real_roots(p, 1e-7);
    assert_eq!(ivs.len(), oracle.len(), "{label}: root count vs companion");
    for (iv, want) in ivs.iter().zip(&oracle) {
        let r = refine_root(p, iv, &tol).unwrap();
        assert!(r.interval.hi.clone() - r.interval.lo.clone() <= tol);
        assert!((r.approx_f64() - want).abs() < 1e-6, "{label}: {} vs {want}", r.approx_f64());
        // exact sign change across the final enclosure
        let a = eval(p.coeffs(), &r.interval.lo);
        let b = eval(p.coeffs(), &r.interval.hi);
        assert!(!(a * b).is_positive(), "{label}: no sign change");
        assert_eq!(sturm_count(p, &r.interval.lo, &r.interval.hi).unwrap(), 1, "{label}");
    }
}

#[test]
fn real_roots_match_companion_eigenvalues() {
    for k in 2..=16 {
        check_real_roots(&FamilySpec::f(k).build().unwrap(), &format!("F_{k}"));
        check_real_roots(&FamilySpec::i(k).build().unwrap(), &format!("I_{k}"));
    }
    for l in 1..=3 {
        for j in 1..=12 {
            check_real_roots(&FamilySpec::d(j, l).build().unwrap(), &format!("D j={j} l={l}"));
        }
    }
    for l in 0..=2 {
        for k in (l as u32 + 3)..=14 {
            check_real_roots(&FamilySpec::h(k, l).build().unwrap(), &format!("H k={k} l={l}"));
        }
    }
}

#[test]
fn complex_roots_match_companion_eigenvalues() {
    for spec in [FamilySpec::f(12), FamilySpec::i(10), FamilySpec::d(12, 2), FamilySpec::h(12, 1)] {
        let p = spec.build().unwrap();
        let set = all_roots_seeded(&p, 500, 1e-12, 0x5EED).unwrap();
        assert!(set.converged, "{spec}");
        let mut oracle = companion_roots(&p);
        assert_eq!(set.roots.len(), oracle.len());
        for z in &set.roots {
            let (i, d) = oracle
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (w - z).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            assert!(d < 1e-8, "{spec}: {z} unmatched ({d})");
            oracle.swap_remove(i);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_count_agrees_with_companion(k in 2u32..14, lo in -40i64..40, w in 1i64..60) {
        let p = FamilySpec::f(k).build().unwrap();
        let (a, b) = (q(lo, 16), q(lo + w, 16));
        let (fa, fb) = (to_f64(&a), to_f64(&b));
        let want = companion_real_roots(&p, 1e-7).iter().filter(|&&r| r > fa + 1e-9 && r <= fb - 1e-9).count();
        let near_end = companion_real_roots(&p, 1e-7).iter().any(|&r| (r - fa).abs() <= 1e-9 || (r - fb).abs() <= 1e-9);
        prop_assume!(!near_end);
        prop_assert_eq!(sturm_count(&p, &a, &b).unwrap(), want);
    }
}
