//! Abscissas where consecutive members of a family cross.
//!
//! The positive crossing solves `p_k = p_{k-1}` and is rational. The
//! negative crossing solves `p_k = p_{k-2}`; after removing a power of `x`
//! the difference is a quadratic whose monic form is `x² - A x - 2B` with
//! `B > 0`, so the crossing is `(A - √(A² + 8B)) / 2`. The closed forms for
//! `A` and `B` are evaluated independently of the difference polynomial, and
//! the resulting enclosure is then certified against the exact difference.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{make_d, make_h, make_i, Family};
use crate::poly::ExactPoly;
use crate::rational::{self, int, Rational};

/// Width of square-root enclosures.
const SQRT_BITS: u32 = 120;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    #[serde(serialize_with = "ser_frac")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_frac")]
    pub hi: Rational,
    /// `lo == hi` and the crossing is that rational.
    pub exact: bool,
    pub approx: f64,
    /// Relative residual `|q(x)| / sum |q_i| |x|^i` of the exact difference
    /// quotient at `approx`; zero for exact crossings.
    pub residual: f64,
    /// The exact difference changes sign across `[lo, hi]` (or vanishes at
    /// the exact value).
    pub certified: bool,
}

fn ser_frac<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_fraction_string(r))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossings {
    pub family: Family,
    pub k: u32,
    pub l: i32,
    pub positive: Crossing,
    pub negative: Option<Crossing>,
}

/// Enclosure `[s, s + 2^-bits]` of `√r` for `r ≥ 0` (degenerate when the
/// scaled radicand is a perfect square).
pub fn sqrt_enclosure(r: &Rational, bits: u32) -> Result<(Rational, Rational)> {
    if r.is_negative() {
        return Err(Error::NegativeDiscriminant(rational::to_fraction_string(r)));
    }
    let scale = BigInt::from(1) << (2 * bits) as usize;
    let scaled = (r.numer() * &scale) / r.denom();
    let s = scaled.sqrt();
    let den = BigInt::from(1) << bits as usize;
    let lo = Rational::new(s.clone(), den.clone());
    let exact = &s * &s == scaled && (r.numer() * &scale) % r.denom() == BigInt::zero();
    let hi = if exact { lo.clone() } else { Rational::new(s + 1, den) };
    Ok((lo, hi))
}

/// Enclosure of the negative root `(A - √(A² + 8B)) / 2` of `x² - A x - 2B`.
pub(crate) fn negative_root_enclosure(a: &Rational, b: &Rational) -> Result<(Rational, Rational)> {
    let disc = a * a + int(8) * b;
    if disc.is_negative() {
        return Err(Error::NegativeDiscriminant(format!(
            "A = {}, B = {}",
            rational::to_fraction_string(a),
            rational::to_fraction_string(b)
        )));
    }
    let (s_lo, s_hi) = sqrt_enclosure(&disc, SQRT_BITS)?;
    let two = int(2);
    Ok(((a - s_hi) / &two, (a - s_lo) / &two))
}

/// `p / x^m` where `x^m` is the largest power of `x` dividing `p`.
fn strip_x_power(p: &ExactPoly) -> ExactPoly {
    let m = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    ExactPoly::new(p.coeffs()[m..].to_vec())
}

fn relative_residual(q: &ExactPoly, x: f64) -> f64 {
    let scale: f64 = q
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| rational::to_f64(c).abs() * x.abs().powi(i as i32))
        .sum();
    q.evaluate_f64(x).abs() / scale
}

fn exact_crossing(diff: &ExactPoly, x: Rational) -> Crossing {
    let certified = diff.evaluate(&x).is_zero();
    Crossing { approx: rational::to_f64(&x), lo: x.clone(), hi: x, exact: true, residual: 0.0, certified }
}

fn enclosed_crossing(diff: &ExactPoly, lo: Rational, hi: Rational) -> Crossing {
    let q = strip_x_power(diff);
    let approx = rational::to_f64(&rational::midpoint(&lo, &hi));
    let certified = if lo == hi {
        q.evaluate(&lo).is_zero()
    } else {
        rational::sign(&q.evaluate(&lo)) * rational::sign(&q.evaluate(&hi)) < 0
    };
    Crossing { residual: relative_residual(&q, approx), lo, hi, exact: false, approx, certified }
}

fn r(n: i64) -> Rational {
    int(n)
}

/// Crossing points of consecutive members.
///
/// * `D` (`k` = degree index `j >= 2`, order `l >= 1`): positive
///   `2k/(k+l)`, negative from `g_k(x) = (k+l)(k+l-1)x² - k(k+l-1)x - 2k(k-1)`.
/// * `I` (`k >= 2`): positive `2 + 2/k`; negative (`k >= 3`) from
///   `x²/(k+1) - x/k - 2/(k-1)`.
/// * `H` (`l >= 0`, `k > l + 2`): positive `2(k+1)/(k-l-1)`; negative
///   (`k >= l + 4`) from `A = (k+1)/(k-l-1)`, `B = (k+1)k/((k-l-1)(k-l-2))`.
pub fn crossing_points(family: Family, k: u32, l: i32) -> Result<Crossings> {
    let kk = k as i64;
    let ll = l as i64;
    let (positive, negative) = match family {
        Family::F => {
            return Err(Error::InvalidParameter("crossing points are defined for D, I and H".into()));
        }
        Family::D => {
            if l < 1 || k < 2 {
                return Err(Error::InvalidParameter(format!("D crossings need l >= 1 and k >= 2, got k={k}, l={l}")));
            }
            let lu = l as u32;
            let dk = make_d(k, lu)?;
            let pos = exact_crossing(&(&dk - &make_d(k - 1, lu)?), Rational::new((2 * kk).into(), (kk + ll).into()));
            let a = Rational::new(kk.into(), (kk + ll).into());
            let b = Rational::new((kk * (kk - 1)).into(), ((kk + ll) * (kk + ll - 1)).into());
            let (lo, hi) = negative_root_enclosure(&a, &b)?;
            let neg = enclosed_crossing(&(&dk - &make_d(k - 2, lu)?), lo, hi);
            (pos, Some(neg))
        }
        Family::I => {
            if k < 2 {
                return Err(Error::InvalidParameter(format!("I crossings need k >= 2, got k={k}")));
            }
            let ik = make_i(k)?;
            let pos = exact_crossing(&(&ik - &make_i(k - 1)?), r(2) + Rational::new(2.into(), kk.into()));
            let neg = if k >= 3 {
                let a = Rational::new((kk + 1).into(), kk.into());
                let b = Rational::new((kk + 1).into(), (kk - 1).into());
                let (lo, hi) = negative_root_enclosure(&a, &b)?;
                Some(enclosed_crossing(&(&ik - &make_i(k - 2)?), lo, hi))
            } else {
                None
            };
            (pos, neg)
        }
        Family::H => {
            if l < 0 || kk <= ll + 2 {
                return Err(Error::InvalidParameter(format!("H crossings need l >= 0 and k > l + 2, got k={k}, l={l}")));
            }
            let hk = make_h(k, l)?;
            let pos = exact_crossing(
                &(&hk - &make_h(k - 1, l)?),
                Rational::new((2 * (kk + 1)).into(), (kk - ll - 1).into()),
            );
            let neg = if kk >= ll + 4 {
                let a = Rational::new((kk + 1).into(), (kk - ll - 1).into());
                let b = Rational::new(((kk + 1) * kk).into(), ((kk - ll - 1) * (kk - ll - 2)).into());
                let (lo, hi) = negative_root_enclosure(&a, &b)?;
                Some(enclosed_crossing(&(&hk - &make_h(k - 2, l)?), lo, hi))
            } else {
                None
            };
            (pos, neg)
        }
    };
    Ok(Crossings { family, k, l, positive, negative })
}

/// `x_k = f(1/(k+l))` for the negative `D` crossing:
/// `f(x) = (1-lx)/2 - √((1-lx)² + 8(1-lx)(1-(l+1)x)/(1-x)) / 2`.
pub fn derivative_crossing_map(l: i32, x: f64) -> f64 {
    let l = l as f64;
    let u = 1.0 - l * x;
    0.5 * u - 0.5 * (u * u + 8.0 * u * (1.0 - (l + 1.0) * x) / (1.0 - x)).sqrt()
}

/// `x_k = f(1/(k-l-1)) / 2` for the negative `H` crossing:
/// `f(x) = 1 + (l+2)x - √((1+(l+2)x)² + 8(1+(l+2)x)(1+(l+1)x)/(1-x))`.
pub fn integral_crossing_map(l: i32, x: f64) -> f64 {
    let l = l as f64;
    let u = 1.0 + (l + 2.0) * x;
    u - (u * u + 8.0 * u * (1.0 + (l + 1.0) * x) / (1.0 - x)).sqrt()
}

/// Central difference with step `h`.
pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn d_positive_crossing_is_rational() {
        let c = crossing_points(Family::D, 6, 2).unwrap();
        assert!(c.positive.exact && c.positive.certified);
        assert_eq!(c.positive.lo, ratio(3, 2));
    }

    #[test]
    fn d_negative_crossing_solves_g() {
        for l in 1..=4i64 {
            for k in 2..=30i64 {
                let c = crossing_points(Family::D, k as u32, l as i32).unwrap();
                let n = c.negative.unwrap();
                assert!(n.certified && n.residual < 1e-10);
                let x = n.approx;
                let g = ((k + l) * (k + l - 1)) as f64 * x * x - (k * (k + l - 1)) as f64 * x - (2 * k * (k - 1)) as f64;
                let scale = ((k + l) * (k + l - 1)) as f64 * x * x + (k * (k + l - 1)) as f64 * x.abs() + (2 * k * (k - 1)) as f64;
                assert!(g.abs() / scale < 1e-10, "k={k} l={l}");
                let f = derivative_crossing_map(l as i32, 1.0 / (k + l) as f64);
                assert!((f - x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn i_crossings() {
        let c = crossing_points(Family::I, 17, 0).unwrap();
        assert_eq!(c.positive.lo, ratio(36, 17));
        let n = c.negative.unwrap();
        assert!(n.certified);
        assert!((n.approx + 1.0612726215).abs() < 1e-9, "{}", n.approx);
        assert!(crossing_points(Family::I, 2, 0).unwrap().negative.is_none());
    }

    #[test]
    fn h_crossings_match_difference() {
        for l in 0..=3 {
            for k in (l as u32 + 4)..=30 {
                let c = crossing_points(Family::H, k, l).unwrap();
                assert!(c.positive.certified);
                let n = c.negative.unwrap();
                assert!(n.certified && n.residual < 1e-10, "k={k} l={l}");
                let f = integral_crossing_map(l, 1.0 / (k as f64 - l as f64 - 1.0)) / 2.0;
                assert!((f - n.approx).abs() < 1e-12);
            }
        }
        assert!(crossing_points(Family::H, 3, 0).unwrap().negative.is_none());
    }

    #[test]
    fn crossing_map_slopes_at_zero() {
        for l in 1..=4 {
            let d = central_difference(|x| derivative_crossing_map(l, x), 0.0, 1e-5);
            assert!((d - l as f64).abs() < 1e-6, "l={l}: {d}");
            let h = central_difference(|x| integral_crossing_map(l, x), 0.0, 1e-5);
            assert!((h + 2.0 * (l as f64 + 2.0)).abs() < 1e-6, "l={l}: {h}");
        }
    }

    #[test]
    fn sqrt_enclosures() {
        let (lo, hi) = sqrt_enclosure(&int(4), 10).unwrap();
        assert_eq!(lo, int(2));
        assert_eq!(hi, int(2));
        let (lo, hi) = sqrt_enclosure(&int(2), 60).unwrap();
        assert!(&lo * &lo < int(2) && &hi * &hi > int(2));
        assert!(matches!(sqrt_enclosure(&int(-1), 10), Err(Error::NegativeDiscriminant(_))));
        assert!(matches!(negative_root_enclosure(&int(1), &int(-1)), Err(Error::NegativeDiscriminant(_))));
    }

    #[test]
    fn invalid_parameters() {
        assert!(crossing_points(Family::F, 5, 0).is_err());
        assert!(crossing_points(Family::D, 1, 1).is_err());
        assert!(crossing_points(Family::H, 3, 1).is_err());
    }
}
