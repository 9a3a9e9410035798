//! Certified real-root counting, isolation and refinement.
//!
//! Counting uses a Sturm chain built as a primitive pseudo-remainder
//! sequence over the integers; every element is scaled by a positive factor
//! only, so signs (and therefore variation counts) are those of the
//! classical rational Sturm sequence. For a squarefree `p` the sign-variation
//! count `V` is right-continuous at the roots of `p`, so `V(a) - V(b)` is the
//! number of distinct roots in the half-open interval `(a, b]` for any
//! `a < b`, endpoint roots included.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::poly::ExactPoly;
use crate::rational::{self, Rational};

/// Number of nudges tried when a bisection point lands on a root.
const MAX_NUDGES: u32 = 8;
/// Nudges move the split point by `width / 2^NUDGE_BITS`.
const NUDGE_BITS: u32 = 64;

pub fn default_tolerance() -> Rational {
    rational::pow10_inv(12)
}

/// Dense integer polynomial used for fast exact sign evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_exact(p: &ExactPoly) -> Self {
        IntPoly::new(p.primitive_integer_coeffs())
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Divides out the positive content.
    fn primitive(mut self) -> IntPoly {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
        }
        self
    }

    /// `|lc(g)|^m f - q g` for the smallest such `m`: a positive multiple of
    /// the Euclidean remainder.
    fn pseudo_rem(&self, g: &IntPoly) -> IntPoly {
        let dg = g.degree().expect("nonzero divisor");
        let lg = g.leading();
        let lg_abs = lg.abs();
        let lg_sign = lg.sign();
        let mut r = self.coeffs.clone();
        while r.len() > dg && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lg_abs;
            }
            let shift = dr - dg;
            for (j, gc) in g.coeffs.iter().enumerate() {
                let t = &lr * gc;
                if lg_sign == Sign::Minus {
                    r[shift + j] += t;
                } else {
                    r[shift + j] -= t;
                }
            }
            debug_assert!(r[dr].is_zero());
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly::new(r)
    }

    /// Sign of `p(num/den)` for `den > 0`, computed as the sign of the
    /// homogenised value `sum c_i num^i den^(n-i)`.
    fn sign_at_frac(&self, num: &BigInt, den_powers: &[BigInt]) -> i8 {
        let Some(n) = self.degree() else { return 0 };
        let mut acc = self.coeffs[n].clone();
        for i in (0..n).rev() {
            acc = acc * num + &self.coeffs[i] * &den_powers[n - i];
        }
        sign_of(&acc)
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        let n = self.degree().unwrap_or(0);
        let powers = den_powers(x.denom(), n);
        self.sign_at_frac(x.numer(), &powers)
    }

    fn sign_at_pos_inf(&self) -> i8 {
        self.degree().map_or(0, |_| sign_of(self.leading()))
    }

    fn sign_at_neg_inf(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = sign_of(self.leading());
                if d % 2 == 0 { s } else { -s }
            }
        }
    }
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn den_powers(den: &BigInt, n: usize) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(BigInt::one());
    for i in 0..n {
        let next = &v[i] * den;
        v.push(next);
    }
    v
}

/// A point on the extended real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    At(Rational),
    PosInf,
}

impl From<Rational> for Endpoint {
    fn from(r: Rational) -> Self {
        Endpoint::At(r)
    }
}

impl From<&Rational> for Endpoint {
    fn from(r: &Rational) -> Self {
        Endpoint::At(r.clone())
    }
}

#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    /// Chain for a squarefree integer polynomial.
    fn from_squarefree(p: IntPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative().primitive()];
        loop {
            let n = seq.len();
            if seq[n - 1].degree().is_none() {
                seq.pop();
                break;
            }
            if seq[n - 1].degree() == Some(0) {
                break;
            }
            let r = seq[n - 2].pseudo_rem(&seq[n - 1]);
            if r.degree().is_none() {
                break;
            }
            let neg = IntPoly::new(r.coeffs.into_iter().map(|c| -c).collect()).primitive();
            seq.push(neg);
        }
        SturmChain { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn variations_of(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations(&self, at: &Endpoint) -> usize {
        match at {
            Endpoint::NegInf => Self::variations_of(self.seq.iter().map(IntPoly::sign_at_neg_inf)),
            Endpoint::PosInf => Self::variations_of(self.seq.iter().map(IntPoly::sign_at_pos_inf)),
            Endpoint::At(x) => {
                let n = self.seq.first().and_then(IntPoly::degree).unwrap_or(0);
                let powers = den_powers(x.denom(), n);
                Self::variations_of(self.seq.iter().map(|q| q.sign_at_frac(x.numer(), &powers)))
            }
        }
    }

    /// Distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: &Endpoint, hi: &Endpoint) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Exact root machinery for one polynomial: its squarefree part, the Sturm
/// chain of that part, and a fast sign oracle.
#[derive(Debug, Clone)]
pub struct RootIsolator {
    poly: ExactPoly,
    squarefree: IntPoly,
    chain: SturmChain,
    was_squarefree: bool,
}

impl RootIsolator {
    pub fn new(p: &ExactPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ip = IntPoly::from_exact(p);
        let chain = SturmChain::from_squarefree(ip.clone());
        // The last chain element is gcd(p, p') up to a positive factor.
        let tail = chain.seq.last().expect("chain has at least p").clone();
        if tail.degree().unwrap_or(0) == 0 || chain.seq.len() == 1 {
            return Ok(RootIsolator { poly: p.clone(), squarefree: ip, chain, was_squarefree: true });
        }
        let g = ExactPoly::from_bigints(&tail.coeffs);
        let sq = p.div_rem(&g).0;
        let sq_int = IntPoly::from_exact(&sq);
        let chain = SturmChain::from_squarefree(sq_int.clone());
        Ok(RootIsolator { poly: p.clone(), squarefree: sq_int, chain, was_squarefree: false })
    }

    pub fn poly(&self) -> &ExactPoly {
        &self.poly
    }

    /// Whether `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> bool {
        self.was_squarefree
    }

    pub fn chain(&self) -> &SturmChain {
        &self.chain
    }

    /// Sign of the squarefree part at `x` (same sign as `p` wherever `p`
    /// has only simple roots).
    pub fn sign_at(&self, x: &Rational) -> i8 {
        self.squarefree.sign_at(x)
    }

    /// Distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: impl Into<Endpoint>, hi: impl Into<Endpoint>) -> usize {
        self.chain.count(&lo.into(), &hi.into())
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &Rational, hi: &Rational) -> usize {
        let c = self.count(lo, hi);
        if self.sign_at(hi) == 0 { c - 1 } else { c }
    }

    /// Distinct roots in the closed interval `[lo, hi]`.
    pub fn count_closed(&self, lo: &Rational, hi: &Rational) -> usize {
        let c = self.count(lo, hi);
        if self.sign_at(lo) == 0 { c + 1 } else { c }
    }

    pub fn count_positive(&self) -> usize {
        self.count(rational::int(0), Endpoint::PosInf)
    }

    /// Distinct roots in `(-inf, 0)`.
    pub fn count_negative(&self) -> usize {
        let zero = rational::int(0);
        let c = self.count(Endpoint::NegInf, &zero);
        if self.sign_at(&zero) == 0 { c - 1 } else { c }
    }

    pub fn count_real(&self) -> usize {
        self.count(Endpoint::NegInf, Endpoint::PosInf)
    }

    /// Isolating intervals for every distinct real root, ascending.
    pub fn isolate(&self) -> Result<Vec<IsolatingInterval>> {
        let d = self.poly.degree()?;
        if d == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let b = power_of_two_at_least(&self.poly.cauchy_bound()?);
        let lo = -b.clone();
        let total = self.count(&lo, &b);
        let mut out = Vec::with_capacity(total);
        let mut stack = vec![(lo, b, total)];
        while let Some((lo, hi, n)) = stack.pop() {
            match n {
                0 => {}
                1 => out.push(IsolatingInterval {
                    sign_lo: self.sign_at(&lo),
                    sign_hi: self.sign_at(&hi),
                    lo,
                    hi,
                }),
                _ => {
                    let mid = self.split_point(&lo, &hi)?;
                    let left = self.count(&lo, &mid);
                    stack.push((mid.clone(), hi, n - left));
                    stack.push((lo, mid, left));
                }
            }
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        Ok(out)
    }

    /// Midpoint of `(lo, hi)`, nudged off any root.
    fn split_point(&self, lo: &Rational, hi: &Rational) -> Result<Rational> {
        let mid = rational::midpoint(lo, hi);
        if self.sign_at(&mid) != 0 {
            return Ok(mid);
        }
        let step = (hi - lo) * rational::pow2_inv(NUDGE_BITS);
        for i in 1..=MAX_NUDGES {
            let shift = &step * rational::int(i as i64);
            for cand in [&mid + &shift, &mid - &shift] {
                if self.sign_at(&cand) != 0 {
                    return Ok(cand);
                }
            }
        }
        Err(Error::EndpointRoot(rational::to_fraction_string(&mid)))
    }

    /// Bisects an isolating interval until its width is at most `tol`.
    pub fn refine(&self, iv: &IsolatingInterval, tol: &Rational) -> Result<IsolatingInterval> {
        if !tol.is_positive() {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        let n = self.count_closed(&iv.lo, &iv.hi);
        if iv.lo >= iv.hi || n != 1 {
            return Err(Error::NotIsolating {
                lo: rational::to_fraction_string(&iv.lo),
                hi: rational::to_fraction_string(&iv.hi),
                count: n,
            });
        }
        let mut lo = iv.lo.clone();
        let mut hi = iv.hi.clone();
        let mut s_lo = self.sign_at(&lo);
        let s_hi = self.sign_at(&hi);
        if s_lo == 0 || s_hi == 0 {
            let root = if s_lo == 0 { lo.clone() } else { hi.clone() };
            return self.bracket_exact_root(&root, &lo, &hi, tol);
        }
        while &hi - &lo > *tol {
            let mid = rational::midpoint(&lo, &hi);
            let s = self.sign_at(&mid);
            if s == 0 {
                return self.bracket_exact_root(&mid, &lo, &hi, tol);
            }
            if s == s_lo {
                lo = mid;
                s_lo = s;
            } else {
                hi = mid;
            }
        }
        Ok(IsolatingInterval { sign_lo: self.sign_at(&lo), sign_hi: self.sign_at(&hi), lo, hi })
    }

    /// Tight interval around a root known exactly, certified by Sturm.
    fn bracket_exact_root(
        &self,
        root: &Rational,
        lo: &Rational,
        hi: &Rational,
        tol: &Rational,
    ) -> Result<IsolatingInterval> {
        let mut delta = tol / rational::int(2);
        loop {
            let a = root - &delta;
            let b = root + &delta;
            if self.sign_at(&a) != 0 && self.sign_at(&b) != 0 && self.count(&a, &b) == 1 {
                return Ok(IsolatingInterval { sign_lo: self.sign_at(&a), sign_hi: self.sign_at(&b), lo: a, hi: b });
            }
            delta = (&delta).min(&((hi - lo) / rational::int(4))) / rational::int(2);
        }
    }

    /// Isolates and refines every real root.
    pub fn all_roots(&self, tol: &Rational, spec: Option<FamilySpec>) -> Result<Vec<RootRecord>> {
        self.isolate()?
            .iter()
            .map(|iv| self.record(iv, tol, spec))
            .collect()
    }

    pub fn record(&self, iv: &IsolatingInterval, tol: &Rational, spec: Option<FamilySpec>) -> Result<RootRecord> {
        let interval = self.refine(iv, tol)?;
        Ok(RootRecord { spec, approx: interval.midpoint(), interval, tol: tol.clone() })
    }
}

fn power_of_two_at_least(x: &Rational) -> Rational {
    let mut b = Rational::one();
    while b < *x {
        b *= rational::int(2);
    }
    b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        rational::midpoint(&self.lo, &self.hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// `Less` when this interval lies entirely below `other`; `None` when
    /// they overlap.
    pub fn strict_cmp(&self, other: &IsolatingInterval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootRecord {
    pub spec: Option<FamilySpec>,
    pub interval: IsolatingInterval,
    pub approx: Rational,
    pub tol: Rational,
}

impl RootRecord {
    pub fn approx_f64(&self) -> f64 {
        rational::to_f64(&self.approx)
    }

    pub fn approx_decimal(&self) -> String {
        rational::to_decimal_string(&self.approx, 18)
    }
}

#[derive(Serialize, Deserialize)]
struct RootRecordJson {
    spec: Option<FamilySpec>,
    lo: String,
    hi: String,
    approx_decimal: String,
    tol: String,
}

impl Serialize for RootRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootRecordJson {
            spec: self.spec,
            lo: rational::to_fraction_string(&self.interval.lo),
            hi: rational::to_fraction_string(&self.interval.hi),
            approx_decimal: self.approx_decimal(),
            tol: rational::to_fraction_string(&self.tol),
        }
        .serialize(s)
    }
}

/// Strict sign alternations among the nonzero coefficients.
pub fn sign_variations(p: &ExactPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(SturmChain::variations_of(p.coeffs().iter().map(rational::sign)))
}

/// Distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &ExactPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::InvalidParameter("sturm_count needs lo < hi".into()));
    }
    Ok(RootIsolator::new(p)?.count(lo, hi))
}

pub fn isolate_real_roots(p: &ExactPoly) -> Result<Vec<IsolatingInterval>> {
    RootIsolator::new(p)?.isolate()
}

pub fn refine_root(p: &ExactPoly, iv: &IsolatingInterval, tol: &Rational) -> Result<RootRecord> {
    RootIsolator::new(p)?.record(iv, tol, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_d, make_f, make_i};
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn descartes_counts() {
        assert_eq!(sign_variations(&make_f(5).unwrap()).unwrap(), 1);
        // three variations for F_4(-x); parity matches its single negative root
        let r4 = make_f(4).unwrap().reflect();
        assert_eq!(sign_variations(&r4).unwrap(), 3);
        assert_eq!(RootIsolator::new(&r4).unwrap().count_positive(), 1);
        let r5 = make_f(5).unwrap().reflect();
        assert_eq!(sign_variations(&r5).unwrap(), 4);
        assert_eq!(RootIsolator::new(&r5).unwrap().count_positive(), 0);
        assert!(sign_variations(&ExactPoly::zero()).is_err());
        assert_eq!(sign_variations(&ExactPoly::from_integers(&[1, 0, 0, -1])).unwrap(), 1);
    }

    #[test]
    fn sturm_counts_golden() {
        let f2 = make_f(2).unwrap();
        assert_eq!(sturm_count(&f2, &int(1), &int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&f2, &int(-1), &int(0)).unwrap(), 1);
        assert!(sturm_count(&f2, &int(1), &int(1)).is_err());
    }

    #[test]
    fn sturm_count_no_negative_roots_for_even_first_integral() {
        let p = make_i(4).unwrap().integer_clear_denominators();
        assert_eq!(sturm_count(&p, &int(-1_000_000), &int(0)).unwrap(), 0);
    }

    #[test]
    fn half_open_semantics_at_endpoint_roots() {
        // (x - 1)(x + 1)
        let p = ExactPoly::from_integers(&[-1, 0, 1]);
        let iso = RootIsolator::new(&p).unwrap();
        assert_eq!(iso.count(int(0), int(1)), 1);
        assert_eq!(iso.count(int(1), int(2)), 0);
        assert_eq!(iso.count_open(&int(0), &int(1)), 0);
        assert_eq!(iso.count_closed(&int(1), &int(2)), 1);
        assert_eq!(iso.count_negative(), 1);
        assert_eq!(iso.count_positive(), 1);
    }

    #[test]
    fn repeated_roots_are_counted_once() {
        // (x - 1)^2 (x + 2)
        let p = ExactPoly::from_integers(&[2, -3, 0, 1]);
        let iso = RootIsolator::new(&p).unwrap();
        assert!(!iso.is_squarefree());
        assert_eq!(iso.count_real(), 2);
        assert_eq!(iso.isolate().unwrap().len(), 2);
    }

    #[test]
    fn isolate_linear() {
        let ivs = isolate_real_roots(&make_f(1).unwrap()).unwrap();
        assert_eq!(ivs.len(), 1);
        assert!(ivs[0].lo < int(1) && int(1) < ivs[0].hi);
        assert_eq!(ivs[0].sign_lo, -1);
        assert_eq!(ivs[0].sign_hi, 1);
        assert!(matches!(isolate_real_roots(&ExactPoly::from_integers(&[3])), Err(Error::ConstantPolynomial)));
    }

    #[test]
    fn isolate_first_integral_five() {
        let p = make_i(5).unwrap();
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 2);
        let iso = RootIsolator::new(&p).unwrap();
        let neg = iso.refine(&ivs[0], &ratio(1, 1000)).unwrap();
        let pos = iso.refine(&ivs[1], &ratio(1, 1000)).unwrap();
        assert!(neg.lo > int(-2) && neg.hi < int(-1));
        assert!(pos.lo > int(2) && pos.hi < int(3));
    }

    #[test]
    fn isolate_even_derivative_member() {
        let ivs = isolate_real_roots(&make_d(6, 2).unwrap()).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].hi <= int(0) && ivs[1].lo >= int(0));
    }

    #[test]
    fn refine_golden_ratio() {
        let f2 = make_f(2).unwrap();
        let ivs = isolate_real_roots(&f2).unwrap();
        let tol = default_tolerance();
        let rec = refine_root(&f2, &ivs[1], &tol).unwrap();
        assert!(rec.interval.width() <= tol);
        // phi^2 = phi + 1 brackets: f2 changes sign across the enclosure
        assert!(f2.evaluate(&rec.interval.lo) < int(0));
        assert!(f2.evaluate(&rec.interval.hi) > int(0));
        assert!((rec.approx_f64() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(rec.approx_decimal().starts_with("1.6180339887"));
    }

    #[test]
    fn refine_integral_two() {
        let p = make_i(2).unwrap().integer_clear_denominators();
        let ivs = isolate_real_roots(&p).unwrap();
        let pos = ivs.iter().find(|iv| iv.hi > int(0)).unwrap();
        let rec = refine_root(&p, pos, &rational::pow10_inv(9)).unwrap();
        assert!(rec.interval.lo > int(2) && rec.interval.hi < int(3));
    }

    #[test]
    fn refine_exact_rational_root() {
        // F_3' = 3x^2 - 2x - 1 has roots 1 and -1/3
        let p = make_d(2, 1).unwrap();
        let iso = RootIsolator::new(&p).unwrap();
        let recs = iso.all_roots(&rational::pow10_inv(9), None).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs[0].interval.contains(&ratio(-1, 3)));
        assert!(recs[1].interval.contains(&int(1)));
        assert!(recs.iter().all(|r| r.interval.width() <= rational::pow10_inv(9)));
    }

    #[test]
    fn refine_rejects_non_isolating() {
        let p = ExactPoly::from_integers(&[-1, 0, 1]);
        let iv = IsolatingInterval { lo: int(-2), hi: int(2), sign_lo: 1, sign_hi: 1 };
        assert!(matches!(refine_root(&p, &iv, &ratio(1, 10)), Err(Error::NotIsolating { count: 2, .. })));
    }

    #[test]
    fn root_record_json() {
        let f2 = make_f(2).unwrap();
        let iso = RootIsolator::new(&f2).unwrap();
        let recs = iso.all_roots(&default_tolerance(), Some(FamilySpec::f(2))).unwrap();
        let v: serde_json::Value = serde_json::to_value(&recs[1]).unwrap();
        assert_eq!(v["tol"], "1/1000000000000");
        assert_eq!(v["spec"]["family"], "F");
        assert!(v["approx_decimal"].as_str().unwrap().starts_with("1.6180339887"));
        assert!(v["lo"].as_str().unwrap().contains('/'));
    }

    proptest! {
        #[test]
        fn bisection_keeps_certification(roots in prop::collection::btree_set(-30i64..30, 1..6)) {
            // product of (2x - r): simple rational roots r/2
            let p = roots.iter().fold(ExactPoly::from_integers(&[1]), |acc, &r| &acc * &ExactPoly::from_integers(&[-r, 2]));
            let iso = RootIsolator::new(&p).unwrap();
            let ivs = iso.isolate().unwrap();
            prop_assert_eq!(ivs.len(), roots.len());
            for (iv, &r) in ivs.iter().zip(roots.iter()) {
                prop_assert!(iv.contains(&ratio(r, 2)));
                let refined = iso.refine(iv, &ratio(1, 1 << 20)).unwrap();
                prop_assert!(refined.contains(&ratio(r, 2)));
                prop_assert_eq!(iso.count_closed(&refined.lo, &refined.hi), 1);
            }
        }

        #[test]
        fn clearing_denominators_keeps_roots(k in 1u32..12) {
            let p = make_i(k).unwrap();
            let a = isolate_real_roots(&p).unwrap();
            let b = isolate_real_roots(&p.integer_clear_denominators()).unwrap();
            prop_assert_eq!(a.len(), b.len());
            let ia = RootIsolator::new(&p).unwrap();
            for (x, y) in a.iter().zip(b.iter()) {
                let rx = ia.refine(x, &ratio(1, 1 << 30)).unwrap();
                let ry = ia.refine(y, &ratio(1, 1 << 30)).unwrap();
                prop_assert!(rx.strict_cmp(&ry).is_none());
            }
        }
    }
}
