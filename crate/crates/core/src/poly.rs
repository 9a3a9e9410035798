//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending power order with trailing zeros
//! trimmed, so the zero polynomial is the empty coefficient list and equal
//! polynomials are structurally equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<Rational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn monomial(coeff: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = coeff;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the leading coefficient. Querying the zero polynomial is
    /// an error.
    pub fn degree(&self) -> Result<usize> {
        self.coeffs.len().checked_sub(1).ok_or(Error::ZeroPolynomial)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        let fs: Vec<f64> = self.coeffs.iter().map(rational::to_f64).collect();
        fs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::int(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Formal antiderivative whose constant of integration is `-1`.
    pub fn antiderivative_minus_one(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(rational::int(-1));
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / rational::int(i as i64 + 1)),
        );
        Self::new(coeffs)
    }

    /// Substitutes `x -> -x`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Multiplies by the positive lcm of the coefficient denominators. The
    /// result has integer coefficients and the same roots and signs.
    pub fn integer_clear_denominators(&self) -> Self {
        let l = self.denominator_lcm();
        self.scale(&Rational::from_integer(l))
    }

    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients of the primitive positive multiple of `self`:
    /// denominators cleared, content divided out, scaling factor positive.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let l = self.denominator_lcm();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &ExactPoly) -> (ExactPoly, ExactPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (ExactPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (ExactPoly::new(quot), ExactPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> ExactPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> ExactPoly {
        if self.degree().map_or(true, |d| d == 0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            Ok(0) | Err(_) => true,
            Ok(_) => self.gcd(&self.derivative()).degree().unwrap_or(0) == 0,
        }
    }

    /// Cauchy bound `1 + max|c_i| / |c_deg|`: every complex root lies
    /// strictly inside this radius.
    pub fn cauchy_bound(&self) -> Result<Rational> {
        let d = self.degree()?;
        let lead = self.coeffs[d].abs();
        let m = self.coeffs[..d]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Ok(Rational::one() + m / lead)
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly({self})")
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, a) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeffs: Vec<String>,
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            coeffs: self.coeffs.iter().map(rational::to_fraction_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| rational::parse_fraction(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(ExactPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn f2() -> ExactPoly {
        ExactPoly::from_integers(&[-1, -1, 1])
    }

    #[test]
    fn evaluate_golden_quadratic() {
        assert_eq!(f2().evaluate(&int(2)), int(1));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = ExactPoly::from_integers(&[1, 2, 0, 0]);
        assert_eq!(p.degree().unwrap(), 1);
        assert_eq!(p, ExactPoly::from_integers(&[1, 2]));
        assert!(ExactPoly::from_integers(&[0, 0]).is_zero());
    }

    #[test]
    fn zero_polynomial_degree_is_an_error() {
        assert!(matches!(ExactPoly::zero().degree(), Err(Error::ZeroPolynomial)));
        assert_eq!(ExactPoly::from_integers(&[7]).degree().unwrap(), 0);
    }

    #[test]
    fn derivative_of_linear_is_constant() {
        let f1 = ExactPoly::from_integers(&[-1, 1]);
        assert_eq!(f1.derivative(), ExactPoly::from_integers(&[1]));
        assert_eq!(f2().nth_derivative(2), ExactPoly::from_integers(&[2]));
        assert!(ExactPoly::from_integers(&[5]).derivative().is_zero());
    }

    #[test]
    fn antiderivative_appends_minus_one() {
        let f1 = ExactPoly::from_integers(&[-1, 1]);
        let i1 = f1.antiderivative_minus_one();
        assert_eq!(i1, ExactPoly::new(vec![int(-1), int(-1), ratio(1, 2)]));
        assert_eq!(ExactPoly::zero().antiderivative_minus_one(), ExactPoly::from_integers(&[-1]));
    }

    #[test]
    fn reflect_flips_odd_powers() {
        assert_eq!(ExactPoly::from_integers(&[-1, 1]).reflect(), ExactPoly::from_integers(&[-1, -1]));
        assert_eq!(f2().reflect(), ExactPoly::from_integers(&[-1, 1, 1]));
    }

    #[test]
    fn ring_ops() {
        let a = ExactPoly::from_integers(&[-1, 1]);
        let b = ExactPoly::from_integers(&[1, 1]);
        assert_eq!(&a * &b, ExactPoly::from_integers(&[-1, 0, 1]));
        assert_eq!(&a + &b, ExactPoly::from_integers(&[0, 2]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn clear_denominators() {
        let i1 = ExactPoly::new(vec![int(-1), int(-1), ratio(1, 2)]);
        assert_eq!(i1.integer_clear_denominators(), ExactPoly::from_integers(&[-2, -2, 1]));
        let p = ExactPoly::new(vec![ratio(2, 3), ratio(4, 3)]);
        assert_eq!(p.primitive_integer_coeffs(), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2)
        let p = ExactPoly::from_integers(&[2, -3, 0, 1]);
        let (q, r) = p.div_rem(&ExactPoly::from_integers(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, ExactPoly::from_integers(&[-2, 1, 1]));
        assert!(!p.is_squarefree());
        assert_eq!(p.squarefree_part().monic(), ExactPoly::from_integers(&[-2, 1, 1]));
        assert!(f2().is_squarefree());
    }

    #[test]
    fn cauchy_bound_encloses_roots() {
        assert_eq!(f2().cauchy_bound().unwrap(), int(2));
    }

    #[test]
    fn json_shape() {
        let i1 = ExactPoly::new(vec![int(-1), int(-1), ratio(1, 2)]);
        let s = serde_json::to_string(&i1).unwrap();
        assert_eq!(s, r#"{"coeffs":["-1/1","-1/1","1/2"]}"#);
        let back: ExactPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, i1);
    }

    #[test]
    fn display() {
        assert_eq!(f2().to_string(), "x^2 - x - 1");
        let i1 = ExactPoly::new(vec![int(-1), int(-1), ratio(1, 2)]);
        assert_eq!(i1.to_string(), "(1/2)x^2 - x - 1");
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..20).prop_map(|(n, d)| ratio(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = ExactPoly> {
        prop::collection::vec(arb_rational(), 0..8).prop_map(ExactPoly::new)
    }

    proptest! {
        #[test]
        fn derivative_inverts_antiderivative(p in arb_poly()) {
            prop_assert_eq!(p.antiderivative_minus_one().derivative(), p);
        }

        #[test]
        fn evaluation_is_multiplicative(p in arb_poly(), q in arb_poly(), x in arb_rational()) {
            prop_assert_eq!((&p * &q).evaluate(&x), p.evaluate(&x) * q.evaluate(&x));
        }

        #[test]
        fn reflect_is_substitution(p in arb_poly(), x in arb_rational()) {
            prop_assert_eq!(p.reflect().evaluate(&x), p.evaluate(&-x.clone()));
            prop_assert_eq!(p.reflect().reflect(), p);
        }

        #[test]
        fn clearing_preserves_sign(p in arb_poly(), x in arb_rational()) {
            let a = p.evaluate(&x);
            let b = p.integer_clear_denominators().evaluate(&x);
            prop_assert_eq!(rational::sign(&a), rational::sign(&b));
            prop_assert!(p.integer_clear_denominators().coeffs().iter().all(|c| c.is_integer()));
        }

        #[test]
        fn div_rem_reconstructs(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let (quot, rem) = p.div_rem(&q);
            prop_assert_eq!(&(&quot * &q) + &rem, p);
            prop_assert!(rem.is_zero() || rem.degree().unwrap() < q.degree().unwrap());
        }
    }
}
