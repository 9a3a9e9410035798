//! Constructors for the four polynomial families built from the k-step
//! Fibonacci characteristic polynomial `F_k(x) = x^k - x^{k-1} - ... - 1`,
//! plus the integer sequences `G(k, l)` and two binomial identities.
//!
//! | family | polynomial | degree |
//! |--------|------------|--------|
//! | `F`    | `F_k`                                   | `k`     |
//! | `D`    | `D_{k-l} = F_k^{(l)}`                   | `k - l` |
//! | `I`    | `I_k = ∫F_k`, constant `-1`             | `k + 1` |
//! | `H`    | `(l+2)`-fold integral of `F_{k-l-1}`    | `k + 1` |

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    F,
    D,
    I,
    H,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::F => "F",
            Family::D => "D",
            Family::I => "I",
            Family::H => "H",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "F" | "f" => Ok(Family::F),
            "D" | "d" => Ok(Family::D),
            "I" | "i" => Ok(Family::I),
            "H" | "h" => Ok(Family::H),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// One member of a family. `k` is the degree parameter; `l` is the
/// derivative order for `D` and the integral depth for `H` (ignored for
/// `F` and `I`). For `D` the polynomial is `F_k^{(l)}`, of degree `k - l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub k: u32,
    #[serde(default)]
    pub l: i32,
}

impl FamilySpec {
    pub fn f(k: u32) -> Self {
        FamilySpec { family: Family::F, k, l: 0 }
    }

    /// `D_j` for derivative order `l`, i.e. `F_{j+l}^{(l)}`.
    pub fn d(j: u32, l: u32) -> Self {
        FamilySpec { family: Family::D, k: j + l, l: l as i32 }
    }

    pub fn i(k: u32) -> Self {
        FamilySpec { family: Family::I, k, l: 0 }
    }

    pub fn h(k: u32, l: i32) -> Self {
        FamilySpec { family: Family::H, k, l }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(format!("{self}: {m}")));
        match self.family {
            Family::F | Family::I if self.k == 0 => bad("k must be >= 1"),
            Family::D if self.l < 1 => bad("derivative order l must be >= 1"),
            Family::D if self.k as i64 <= self.l as i64 => bad("need k > l"),
            Family::H if self.l < -1 => bad("need l >= -1"),
            Family::H if self.l as i64 + 1 >= self.k as i64 => bad("need l + 1 < k"),
            _ => Ok(()),
        }
    }

    pub fn degree(&self) -> u32 {
        match self.family {
            Family::F => self.k,
            Family::D => self.k - self.l as u32,
            Family::I | Family::H => self.k + 1,
        }
    }

    pub fn build(&self) -> Result<ExactPoly> {
        self.validate()?;
        match self.family {
            Family::F => make_f(self.k),
            Family::D => make_d(self.k - self.l as u32, self.l as u32),
            Family::I => make_i(self.k),
            Family::H => make_h(self.k, self.l),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::F | Family::I => write!(f, "{}(k={})", self.family, self.k),
            _ => write!(f, "{}(k={}, l={})", self.family, self.k, self.l),
        }
    }
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `F_k(x) = x^k - sum_{t<k} x^t`.
pub fn make_f(k: u32) -> Result<ExactPoly> {
    if k == 0 {
        return Err(Error::InvalidParameter("F_k needs k >= 1".into()));
    }
    let mut c = vec![-1i64; k as usize + 1];
    c[k as usize] = 1;
    Ok(ExactPoly::from_integers(&c))
}

/// `D_j = F_{j+l}^{(l)} = l! (C(j+l,l) x^j - sum_{t<j} C(t+l,l) x^t)`,
/// with `D_0 = l!`.
pub fn make_d(j: u32, l: u32) -> Result<ExactPoly> {
    if l == 0 {
        return Err(Error::InvalidParameter("D_j needs derivative order l >= 1".into()));
    }
    let lf = factorial(l);
    if j == 0 {
        return Ok(ExactPoly::from_bigints(&[lf]));
    }
    let mut c: Vec<BigInt> = (0..j).map(|t| -(&lf * binomial(t + l, l))).collect();
    c.push(&lf * binomial(j + l, l));
    Ok(ExactPoly::from_bigints(&c))
}

/// Numerator of the rational closed form of `D_{k-l}`:
/// `D_{k-l}(x) (x - 1)^{l+1}`, by direct multiplication.
pub fn make_d_numerator(k: u32, l: u32) -> Result<ExactPoly> {
    if !(k > l && l >= 1) {
        return Err(Error::InvalidParameter(format!("numerator needs k > l >= 1, got k={k}, l={l}")));
    }
    let x_minus_1 = ExactPoly::from_integers(&[-1, 1]);
    Ok(&make_d(k - l, l)? * &x_minus_1.pow(l + 1))
}

/// Outcome of stepping the numerator coefficients `a_t` from derivative
/// order `l` to `l + 1` by the two candidate recurrences
/// `b_t = a_t (k - l - t) + a_{t-1} (k + 2 - t)` (plus form) and
/// `b_t = a_t (k - l - t) - a_{t-1} (k + 2 - t)` (minus form).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceCheck {
    pub k: u32,
    pub l: u32,
    pub plus_form_matches: bool,
    pub minus_form_matches: bool,
}

/// Writes the numerator as `sum_t (-1)^t a_t x^{k+1-t} + (-1)^l l!` and
/// returns `a_0..=a_{l+1}`.
pub fn numerator_a_coefficients(k: u32, l: u32) -> Result<Vec<Rational>> {
    let n = make_d_numerator(k, l)?;
    Ok((0..=l + 1)
        .map(|t| {
            let c = n.coeff((k + 1 - t) as usize);
            if t % 2 == 0 { c } else { -c }
        })
        .collect())
}

pub fn check_numerator_recurrence(k: u32, l: u32) -> Result<RecurrenceCheck> {
    if k <= l + 1 {
        return Err(Error::InvalidParameter(format!("recurrence step needs k > l + 1, got k={k}, l={l}")));
    }
    let a = numerator_a_coefficients(k, l)?;
    let want = numerator_a_coefficients(k, l + 1)?;
    let kk = rational::int(k as i64);
    let ll = rational::int(l as i64);
    let step = |sign: i64| -> Vec<Rational> {
        let mut b = Vec::with_capacity(a.len() + 1);
        b.push(&a[0] * (&kk - &ll));
        for t in 1..=(l + 1) as usize {
            let tt = rational::int(t as i64);
            let own = &a[t] * (&kk - &ll - &tt);
            let prev = &a[t - 1] * (&kk + rational::int(2) - &tt) * rational::int(sign);
            b.push(own + prev);
        }
        b.push(&a[l as usize + 1] * (&kk - &ll));
        b
    };
    Ok(RecurrenceCheck {
        k,
        l,
        plus_form_matches: step(1) == want,
        minus_form_matches: step(-1) == want,
    })
}

/// `I_j = x^{j+1}/(j+1) - x^j/j - ... - x - 1`.
pub fn make_i(j: u32) -> Result<ExactPoly> {
    if j == 0 {
        return Err(Error::InvalidParameter("I_j needs j >= 1".into()));
    }
    let mut c = vec![rational::int(-1)];
    c.extend((1..=j).map(|t| rational::ratio(-1, t as i64)));
    c.push(rational::ratio(1, j as i64 + 1));
    Ok(ExactPoly::new(c))
}

/// `(l+2)`-fold integral of `F_{k-l-1}` with every integration constant
/// `-1`:
/// `x^{k+1}/((l+2)! C(k+1,l+2)) - sum_{t=l+2}^{k} x^t/((l+2)! C(t,l+2)) - sum_{s<=l+1} x^s/s!`.
/// `l = -1` gives `I_k`.
pub fn make_h(k: u32, l: i32) -> Result<ExactPoly> {
    if l < -1 || l as i64 + 1 >= k as i64 {
        return Err(Error::InvalidParameter(format!("H_k needs -1 <= l and l + 1 < k, got k={k}, l={l}")));
    }
    let depth = (l + 2) as u32;
    let df = factorial(depth);
    let mut c: Vec<Rational> = (0..depth)
        .map(|s| -Rational::new(BigInt::one(), factorial(s)))
        .collect();
    for t in depth..=k {
        c.push(-Rational::new(BigInt::one(), &df * binomial(t, depth)));
    }
    c.push(Rational::new(BigInt::one(), &df * binomial(k + 1, depth)));
    Ok(ExactPoly::new(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigIntSequence {
    pub k: u32,
    pub terms: Vec<BigInt>,
}

impl BigIntSequence {
    /// Re-checks every emitted term against the defining recurrence and
    /// initial values.
    pub fn satisfies_recurrence(&self) -> bool {
        let k = self.k as usize;
        self.terms.iter().enumerate().all(|(i, g)| {
            let l = i + 1;
            let want = if l == 1 {
                BigInt::one()
            } else if l <= k {
                BigInt::one() << (l - 2)
            } else {
                self.terms[i - k..i].iter().sum()
            };
            *g == want
        })
    }

    /// Newline-delimited decimal terms.
    pub fn to_lines(&self) -> String {
        self.terms.iter().map(|t| format!("{t}\n")).collect()
    }
}

/// First `count` terms of `G(k, 1), G(k, 2), ...`.
pub fn g_sequence(k: u32, count: usize) -> Result<BigIntSequence> {
    if k < 2 || count == 0 {
        return Err(Error::InvalidParameter(format!("G(k, .) needs k >= 2 and count >= 1, got k={k}, count={count}")));
    }
    let k = k as usize;
    let mut terms: Vec<BigInt> = Vec::with_capacity(count);
    for l in 1..=count {
        let g = if l == 1 {
            BigInt::one()
        } else if l <= k {
            BigInt::one() << (l - 2)
        } else {
            terms[l - 1 - k..l - 1].iter().sum()
        };
        terms.push(g);
    }
    Ok(BigIntSequence { k: k as u32, terms })
}

/// `G(k, l+1) / G(k, l)` as a float.
pub fn g_ratio(k: u32, l: usize) -> Result<f64> {
    if l == 0 {
        return Err(Error::InvalidParameter("g_ratio needs l >= 1".into()));
    }
    let s = g_sequence(k, l + 1)?;
    Ok(rational::to_f64(&Rational::new(s.terms[l].clone(), s.terms[l - 1].clone())))
}

/// Checks
/// `(c^{-2(n+1)} - 1)/(1 + c) = c^{-(n+2)} sum_{i=1}^{n+1} C(n+i, 2i-1) (1-c)^{2i-1} / c^{i-1}
///  = sum_{m=1}^{2(n+1)} (-1/c)^m`
/// in exact arithmetic.
pub fn check_identity_1_2(c: &Rational, n: u32) -> Result<bool> {
    let minus_one = rational::int(-1);
    if c.is_zero() || *c == minus_one {
        return Err(Error::InvalidParameter(format!("identity needs c not in {{0, -1}}, got {c}")));
    }
    let one = Rational::one();
    let inv = c.recip();
    let lhs = (rational_pow(&inv, 2 * (n + 1)) - &one) / (&one + c);
    let one_minus_c = &one - c;
    let middle_sum: Rational = (1..=n + 1)
        .map(|i| {
            Rational::from_integer(binomial(n + i, 2 * i - 1)) * rational_pow(&one_minus_c, 2 * i - 1)
                * rational_pow(&inv, i - 1)
        })
        .sum();
    let middle = rational_pow(&inv, n + 2) * middle_sum;
    let r = -inv;
    let rhs: Rational = (1..=2 * (n + 1)).map(|m| rational_pow(&r, m)).sum();
    Ok(lhs == middle && middle == rhs)
}

/// `2(n+1) = sum_{i=1}^{n+1} C(n+i, 2i-1) 2^{2i-1} (-1)^{n+i+1}`.
pub fn check_polya_limit_identity(n: u32) -> bool {
    let sum: BigInt = (1..=n + 1)
        .map(|i| {
            let term = binomial(n + i, 2 * i - 1) << (2 * i - 1) as usize;
            if (n + i + 1) % 2 == 0 { term } else { -term }
        })
        .sum();
    sum == BigInt::from(2 * (n + 1))
}

fn rational_pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}
