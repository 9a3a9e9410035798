//! All complex roots in double precision via Aberth–Ehrlich iteration, and
//! the check that every non-dominant root lies strictly inside the disk
//! whose radius is the certified dominant positive root.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::poly::ExactPoly;
use crate::rational;
use crate::realroots::RootRecord;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_MAX_ITER: usize = 5000;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;
/// Slack used when matching a float root against a certified enclosure.
pub const MATCH_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexRootSet {
    #[serde(serialize_with = "serialize_complex")]
    pub roots: Vec<Complex64>,
    /// `|p(z)| / sum |a_i| |z|^i` per root.
    pub residuals: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

fn serialize_complex<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl ComplexRootSet {
    pub fn moduli(&self) -> Vec<f64> {
        self.roots.iter().map(|z| z.norm()).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }

    /// One CSV row per root: `family,k,l,re,im,modulus,residual`.
    pub fn to_csv_rows(&self, spec: &FamilySpec) -> String {
        let mut out = String::new();
        for (z, r) in self.roots.iter().zip(&self.residuals) {
            let _ = writeln!(out, "{},{},{},{:.17e},{:.17e},{:.17e},{:.3e}", spec.family, spec.k, spec.l, z.re, z.im, z.norm(), r);
        }
        out
    }
}

pub const CSV_HEADER: &str = "family,k,l,re,im,modulus,residual";

/// Float coefficients of the primitive integer multiple of `p`, scaled to a
/// unit leading coefficient. Fails when the conversion overflows.
pub fn monic_float_coeffs(p: &ExactPoly) -> Result<Vec<f64>> {
    let d = p.degree()?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let ints = ExactPoly::from_bigints(&p.primitive_integer_coeffs());
    let lead = ints.coeff(d);
    let coeffs: Vec<f64> = ints.coeffs().iter().map(|c| rational::to_f64(&(c / &lead))).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter(format!("coefficients of degree-{d} polynomial overflow f64")));
    }
    Ok(coeffs)
}

/// `2 max(|a_{n-1}|, |a_{n-2}|^{1/2}, ..., |a_0/2|^{1/n})` for monic `a`.
fn fujiwara_bound(a: &[f64]) -> f64 {
    let n = a.len() - 1;
    let b = (1..=n)
        .map(|i| {
            let c = if i == n { a[0].abs() / 2.0 } else { a[n - i].abs() };
            c.powf(1.0 / i as f64)
        })
        .fold(0.0f64, f64::max);
    if b > 0.0 { 2.0 * b } else { 1.0 }
}

/// `a / b` without squaring `|b|`, which overflows for large arguments.
fn scaled_div(a: Complex64, b: Complex64) -> Complex64 {
    let s = b.re.abs().max(b.im.abs());
    if s == 0.0 || !s.is_finite() {
        return a / b;
    }
    (a / s) / (b / s)
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let (p, _) = horner(coeffs, z);
    let r = z.norm();
    let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
    if scale == 0.0 { p.norm() } else { p.norm() / scale }
}

pub fn all_roots(p: &ExactPoly, max_iter: usize, residual_tol: f64) -> Result<ComplexRootSet> {
    all_roots_seeded(p, max_iter, residual_tol, DEFAULT_SEED)
}

/// Aberth–Ehrlich iteration from `n` points on the circle whose radius is
/// the Fujiwara bound, with seeded random phase jitter.
pub fn all_roots_seeded(p: &ExactPoly, max_iter: usize, residual_tol: f64, seed: u64) -> Result<ComplexRootSet> {
    let a = monic_float_coeffs(p)?;
    let n = a.len() - 1;
    let radius = fujiwara_bound(&a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset: f64 = rng.random::<f64>() * TAU;
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| {
            let jitter: f64 = rng.random::<f64>() * 0.25;
            Complex64::from_polar(radius, offset + (i as f64 + jitter) * TAU / n as f64)
        })
        .collect();

    let mut iterations = 0;
    let mut settled = 0;
    while iterations < max_iter {
        iterations += 1;
        let mut max_step = 0.0f64;
        let mut stalled = false;
        for i in 0..n {
            let (pv, dpv) = horner(&a, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = scaled_div(pv, dpv);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| scaled_div(Complex64::new(1.0, 0.0), z[i] - z[j]))
                .sum();
            let w = scaled_div(ratio, Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / z[i].norm().max(1e-300));
            } else {
                stalled = true;
            }
        }
        // A couple of sweeps past the float floor as polish.
        if !stalled && max_step < 4.0 * f64::EPSILON {
            settled += 1;
            if settled >= 3 {
                break;
            }
        }
    }

    let mut pairs: Vec<(Complex64, f64)> = z.iter().map(|&zi| (zi, relative_residual(&a, zi))).collect();
    pairs.sort_by(|x, y| y.0.norm().total_cmp(&x.0.norm()).then(x.0.im.total_cmp(&y.0.im)));
    let converged = pairs.iter().all(|(zi, r)| zi.is_finite() && *r <= residual_tol);
    Ok(ComplexRootSet {
        roots: pairs.iter().map(|p| p.0).collect(),
        residuals: pairs.iter().map(|p| p.1).collect(),
        converged,
        iterations,
    })
}

/// Relative Vieta residuals `(sum, product)` against the exact
/// coefficients.
pub fn vieta_residuals(p: &ExactPoly, set: &ComplexRootSet) -> Result<(f64, f64)> {
    let d = p.degree()?;
    let lead = p.coeff(d);
    let want_sum = -rational::to_f64(&(p.coeff(d - 1) / &lead));
    let mut want_prod = rational::to_f64(&(p.coeff(0) / &lead));
    if d % 2 == 1 {
        want_prod = -want_prod;
    }
    let sum: Complex64 = set.roots.iter().sum();
    let prod: Complex64 = set.roots.iter().product();
    let rel = |got: Complex64, want: f64| {
        let err = (got - Complex64::new(want, 0.0)).norm();
        if want == 0.0 { err } else { err / want.abs() }
    };
    Ok((rel(sum, want_sum), rel(prod, want_prod)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusBoundReport {
    pub holds: bool,
    pub dominant: f64,
    pub max_other_modulus: f64,
    /// `dominant - max_other_modulus`; negative when the bound fails.
    pub min_margin: f64,
    pub degree: usize,
}

/// Every root except the one matching the certified dominant root must
/// have modulus strictly below it.
pub fn check_modulus_bound(p: &ExactPoly, dominant: &RootRecord) -> Result<ModulusBoundReport> {
    let set = all_roots(p, DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL)?;
    check_modulus_bound_with(&set, dominant)
}

pub fn check_modulus_bound_with(set: &ComplexRootSet, dominant: &RootRecord) -> Result<ModulusBoundReport> {
    if !set.converged {
        return Err(Error::NotConverged(format!(
            "Aberth iteration stopped after {} sweeps with max residual {:.3e}",
            set.iterations,
            set.max_residual()
        )));
    }
    let lo = rational::to_f64(&dominant.interval.lo) - MATCH_SLACK;
    let hi = rational::to_f64(&dominant.interval.hi) + MATCH_SLACK;
    let matches: Vec<usize> = set
        .roots
        .iter()
        .enumerate()
        .filter(|(_, z)| z.im.abs() <= MATCH_SLACK && lo <= z.re && z.re <= hi)
        .map(|(i, _)| i)
        .collect();
    if matches.len() != 1 {
        return Err(Error::AmbiguousMatch(format!(
            "{} float roots within {MATCH_SLACK:e} of the enclosure [{lo}, {hi}]",
            matches.len()
        )));
    }
    let d = dominant.approx_f64();
    let max_other = set
        .roots
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != matches[0])
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max);
    Ok(ModulusBoundReport {
        holds: max_other < d,
        dominant: d,
        max_other_modulus: max_other,
        min_margin: d - max_other,
        degree: set.roots.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_d, make_f, make_i};
    use crate::realroots::{default_tolerance, RootIsolator};

    fn dominant(p: &ExactPoly) -> RootRecord {
        let iso = RootIsolator::new(p).unwrap();
        iso.all_roots(&default_tolerance(), None).unwrap().pop().unwrap()
    }

    #[test]
    fn golden_quadratic() {
        let set = all_roots(&make_f(2).unwrap(), 200, 1e-12).unwrap();
        assert!(set.converged);
        let s5 = 5f64.sqrt();
        assert!((set.roots[0] - Complex64::new((1.0 + s5) / 2.0, 0.0)).norm() < 1e-12);
        assert!((set.roots[1] - Complex64::new((1.0 - s5) / 2.0, 0.0)).norm() < 1e-12);
        assert!(set.residuals.iter().all(|&r| r < 1e-12));
    }

    #[test]
    fn difference_of_squares() {
        let set = all_roots(&ExactPoly::from_integers(&[-1, 0, 1]), 200, 1e-12).unwrap();
        let mut re: Vec<f64> = set.roots.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
        assert!(set.roots.iter().all(|z| z.im.abs() < 1e-12));
    }

    #[test]
    fn fifth_order_has_one_root_outside_unit_disk() {
        let set = all_roots(&make_f(5).unwrap(), DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL).unwrap();
        assert!(set.converged);
        assert_eq!(set.roots.len(), 5);
        let outside: Vec<_> = set.roots.iter().filter(|z| z.norm() > 1.0).collect();
        assert_eq!(outside.len(), 1);
        assert!(outside[0].im.abs() < 1e-8 && outside[0].re > 1.0 && outside[0].re < 2.0);
    }

    #[test]
    fn sorted_by_descending_modulus() {
        let set = all_roots(&make_i(7).unwrap(), DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL).unwrap();
        let m = set.moduli();
        assert!(m.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(set.residuals.len(), set.roots.len());
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let p = make_i(9).unwrap();
        let a = all_roots_seeded(&p, DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL, 7).unwrap();
        let b = all_roots_seeded(&p, DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn non_convergence_is_flagged() {
        let set = all_roots(&make_f(12).unwrap(), 1, 1e-14).unwrap();
        assert!(!set.converged);
        let dom = dominant(&make_f(12).unwrap());
        assert!(matches!(check_modulus_bound_with(&set, &dom), Err(Error::NotConverged(_))));
    }

    #[test]
    fn modulus_bounds_hold() {
        for p in [make_f(10).unwrap(), make_i(9).unwrap(), make_d(8, 2).unwrap()] {
            let rep = check_modulus_bound(&p, &dominant(&p)).unwrap();
            assert!(rep.holds, "{p}: {rep:?}");
            assert!(rep.min_margin > 0.0);
        }
    }

    #[test]
    fn ambiguous_match_is_an_error() {
        let p = make_f(4).unwrap();
        let set = all_roots(&p, DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL).unwrap();
        let mut rec = dominant(&p);
        // widen the enclosure to swallow the negative root too
        rec.interval.lo = rational::int(-2);
        assert!(matches!(check_modulus_bound_with(&set, &rec), Err(Error::AmbiguousMatch(_))));
    }

    #[test]
    fn vieta_small() {
        let p = make_i(6).unwrap();
        let set = all_roots(&p, DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL).unwrap();
        let (s, q) = vieta_residuals(&p, &set).unwrap();
        assert!(s < 1e-10 && q < 1e-10, "{s} {q}");
    }

    #[test]
    fn csv_rows() {
        let set = all_roots(&make_f(2).unwrap(), 200, 1e-12).unwrap();
        let csv = set.to_csv_rows(&FamilySpec::f(2));
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.starts_with("F,2,0,1.6180339887"));
        assert_eq!(CSV_HEADER.split(',').count(), csv.lines().next().unwrap().split(',').count());
    }
}
