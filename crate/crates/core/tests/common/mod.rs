//! Independent oracles shared by the integration tests: companion-matrix
//! eigenvalues and coefficient-level calculus on plain rationals.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use polyzero::ExactPoly;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

/// Roots as eigenvalues of the companion matrix of the monic float
/// polynomial.
pub fn companion_roots(p: &ExactPoly) -> Vec<Complex64> {
    let c: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    let n = c.len() - 1;
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    m.complex_eigenvalues().iter().cloned().collect()
}

/// Real companion roots, sorted.
pub fn companion_real_roots(p: &ExactPoly, im_tol: f64) -> Vec<f64> {
    let mut r: Vec<f64> = companion_roots(p).into_iter().filter(|z| z.im.abs() < im_tol).map(|z| z.re).collect();
    r.sort_by(f64::total_cmp);
    r
}

/// `F_k` coefficients, low degree first.
pub fn f_coeffs(k: usize) -> Vec<BigRational> {
    let mut c = vec![-BigRational::one(); k + 1];
    c[k] = BigRational::one();
    c
}

pub fn differentiate(c: &[BigRational]) -> Vec<BigRational> {
    c.iter().enumerate().skip(1).map(|(i, a)| a * BigRational::from_integer(BigInt::from(i))).collect()
}

/// Antiderivative with constant term `-1`.
pub fn integrate_minus_one(c: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![-BigRational::one()];
    out.extend(c.iter().enumerate().map(|(i, a)| a / BigRational::from_integer(BigInt::from(i + 1))));
    out
}

pub fn trimmed(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

/// Direct evaluation from coefficients.
pub fn eval(c: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut pow = BigRational::one();
    for a in c {
        acc += a * &pow;
        pow *= x;
    }
    acc
}
