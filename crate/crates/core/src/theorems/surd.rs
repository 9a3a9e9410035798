//! Exact arithmetic in `Q(√d)` for a fixed positive rational `d`, enough to
//! evaluate a rational polynomial at a quadratic irrational and read off the
//! sign of the result.

use std::ops::{Add, Mul};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::rational::Rational;

/// `a + b √d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl Surd {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::InvalidParameter(format!("surd radicand must be positive, got {d}")));
        }
        Ok(Surd { a, b, d })
    }

    fn rational(&self, a: Rational) -> Self {
        Surd { a, b: Rational::zero(), d: self.d.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign, using `a + b√d > 0` iff the larger-magnitude term is
    /// positive (`a² - b² d` decides which).
    pub fn sign(&self) -> i8 {
        let sa = crate::rational::sign(&self.a);
        let sb = crate::rational::sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        let diff = &self.a * &self.a - &self.b * &self.b * &self.d;
        match crate::rational::sign(&diff) {
            0 => 0,
            1 => sa,
            _ => sb,
        }
    }

    /// Horner evaluation of `p` at this point.
    pub fn eval(&self, p: &ExactPoly) -> Surd {
        p.coeffs()
            .iter()
            .rev()
            .fold(self.rational(Rational::zero()), |acc, c| &(&acc * self) + &self.rational(c.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        let d = crate::rational::to_f64(&self.d);
        crate::rational::to_f64(&self.a) + crate::rational::to_f64(&self.b) * d.sqrt()
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        debug_assert_eq!(self.d, o.d);
        Surd { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() }
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        debug_assert_eq!(self.d, o.d);
        Surd {
            a: &self.a * &o.a + &self.b * &o.b * &self.d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        }
    }
}
