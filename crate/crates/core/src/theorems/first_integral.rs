//! Roots of `I_k`: the positive root `φ_k` in `(2,3)` decreasing to 2, the
//! negative root `θ_k` for odd `k`, no negative root for even `k`, and the
//! bound and pointwise limit of `I_k` on `(-1,1)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::crossing::crossing_points;
use super::{
    check_monotone, check_trend, compare_members, count_text, interval_text, require, settle_threshold, sweep,
    trend_checkpoints, Compared, Member, Status, VerificationReport, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::families::{make_f, make_i, Family};
use crate::rational::{self, int, Rational};
use crate::realroots::RootIsolator;

/// Decimal value of `I_17` at its crossing with `I_15`.
pub const I17_PIVOT_VALUE: f64 = -0.0337812682;

pub fn verify_first_integral_theorem(k_max: u32, opts: &VerifyOptions) -> Result<VerificationReport> {
    require(k_max >= 19, format!("first integral sweep needs k_max >= 19, got {k_max}"))?;
    let params = json!({ "k_max": k_max, "tol": rational::to_fraction_string(&opts.tol) });
    let indices: Vec<u32> = (1..=k_max).collect();
    let members = sweep(&indices, &opts.tol, make_i)?;
    let mut report = VerificationReport::new("first_integral", "roots of I_k", params.clone());
    let (two, three) = (int(2), int(3));

    let mut bounds = VerificationReport::new("first_integral.phi_bounds", "I_k has a simple positive root in (2,3)", params.clone());
    for m in &members {
        let p = m.iso.poly();
        let ok = m.positive.len() == 1
            && m.iso.count_open(&two, &three) == 1
            && p.evaluate(&two).is_negative()
            && p.evaluate(&three).is_positive();
        bounds.check(ok, format!("k={}", m.index), count_text(&m.iso));
    }
    report.push(bounds);

    let mut dec = VerificationReport::new("first_integral.phi_decreasing", "phi_{k+1} < phi_k for k >= 2", params.clone());
    let pairs: Vec<_> = members.windows(2).skip(1).map(|w| (&w[0], &w[1])).collect();
    check_monotone(&mut dec, &pairs, Member::only_positive, Ordering::Less);
    for k in 2..=k_max {
        let step = make_i(k)?.evaluate(&two) - make_i(k - 1)?.evaluate(&two);
        let want = -Rational::new(BigInt::one() << (k + 1) as usize, BigInt::from(k) * (k + 1));
        dec.check(step == want, format!("I_k(2) - I_(k-1)(2), k={k}"), rational::to_fraction_string(&step));
        let c = crossing_points(Family::I, k, 0)?;
        dec.check(c.positive.certified, format!("crossing 2+2/k, k={k}"), rational::to_fraction_string(&c.positive.lo));
        if k >= 3 {
            let v = make_i(k)?.evaluate(&c.positive.lo);
            dec.check(v.is_negative(), format!("I_k(2+2/k) < 0, k={k}"), rational::to_fraction_string(&v));
        }
    }
    dec.witness("I_5(2) - I_4(2)", rational::to_fraction_string(&(make_i(5)?.evaluate(&two) - make_i(4)?.evaluate(&two))));
    report.push(dec);

    let mut lim = VerificationReport::new("first_integral.phi_limit", "phi_k -> 2", params.clone());
    check_trend(&mut lim, &members, &trend_checkpoints(2, k_max), Member::only_positive, &two);
    report.push(lim);

    let odd: Vec<&Member> = members.iter().filter(|m| m.index % 2 == 1).collect();
    let mut theta = VerificationReport::new(
        "first_integral.theta_bounds",
        "odd k: exactly one negative root, in (-2,-1)",
        params.clone(),
    );
    for m in &odd {
        let label = format!("k={}", m.index);
        if m.negative.len() != 1 {
            theta.check(false, label, count_text(&m.iso));
            continue;
        }
        let in_main = m.iso.count_open(&int(-2), &int(-1)) == 1;
        if m.index >= 5 {
            theta.check(in_main, label, interval_text(&m.negative[0].interval));
        } else {
            // recorded exception: the root lies in (-1, 0)
            let in_unit = m.iso.count_open(&int(-1), &int(0)) == 1;
            let at_minus_one = m.iso.poly().evaluate(&int(-1));
            theta.witness(
                format!("exception {label}"),
                format!(
                    "theta in {} (I_k(-1) = {})",
                    if in_unit { "(-1,0)" } else { "?" },
                    rational::to_fraction_string(&at_minus_one)
                ),
            );
        }
    }
    theta.note("k = 1, 3 are listed as exceptions: their negative roots lie in (-1, 0) since I_1(-1) = 1/2 > 0 and I_3(-1) > 0");
    report.push(theta);

    let mut inc = VerificationReport::new(
        "first_integral.theta_increasing",
        "theta_k > theta_{k-2} for odd k >= 17",
        params.clone(),
    );
    let idx: Vec<u32> = odd.iter().skip(1).map(|m| m.index).collect();
    let ok: Vec<bool> = odd
        .windows(2)
        .map(|w| compare_members(w[1], w[0], Member::only_negative) == Compared::Ordered(Ordering::Greater))
        .collect();
    settle_threshold(&mut inc, &idx, &ok);
    if inc.discovered_threshold.is_some_and(|t| t > 17) {
        inc.status = inc.status.and(Status::Fail);
        inc.note("threshold exceeds 17");
    }
    let pivot = i17_pivot()?;
    inc.witness("x_17 enclosure", format!("[{:.12}, {:.12}]", rational::to_f64(&pivot.x_lo), rational::to_f64(&pivot.x_hi)));
    inc.witness("I_17(x_17)", format!("{:.12}", pivot.value_f64()));
    inc.check(pivot.value_hi.is_negative(), "I_17(x_17) < 0", pivot.value_f64());
    inc.check((pivot.value_f64() - I17_PIVOT_VALUE).abs() < 1e-8, "I_17(x_17) = -0.0337812682", pivot.value_f64());
    report.push(inc);

    let mut even = VerificationReport::new("first_integral.even_no_negative", "even k: I_k has no negative root", params);
    for m in members.iter().filter(|m| m.index % 2 == 0) {
        even.check(m.iso.count_negative() == 0, format!("k={}", m.index), count_text(&m.iso));
    }
    report.push(even);
    Ok(report)
}

/// Enclosure of `I_17` at the negative crossing `x_17` of `I_17` and `I_15`.
#[derive(Debug, Clone)]
pub(crate) struct Pivot {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub value_lo: Rational,
    pub value_hi: Rational,
}

impl Pivot {
    pub fn value_f64(&self) -> f64 {
        rational::to_f64(&rational::midpoint(&self.value_lo, &self.value_hi))
    }
}

/// `I_17' = F_17` has no root on the crossing enclosure, so `I_17` is
/// monotone there and its endpoint values bound `I_17(x_17)`.
pub(crate) fn i17_pivot() -> Result<Pivot> {
    let c = crossing_points(Family::I, 17, 0)?.negative.expect("k >= 3 has a negative crossing");
    if !c.certified {
        return Err(Error::NotConverged("x_17 enclosure not certified".into()));
    }
    let f17 = RootIsolator::new(&make_f(17)?)?;
    if f17.count_closed(&c.lo, &c.hi) != 0 {
        return Err(Error::NotConverged("I_17 not monotone on the x_17 enclosure".into()));
    }
    let i17 = make_i(17)?;
    let (a, b) = (i17.evaluate(&c.lo), i17.evaluate(&c.hi));
    let (value_lo, value_hi) = if a <= b { (a, b) } else { (b, a) };
    Ok(Pivot { x_lo: c.lo, x_hi: c.hi, value_lo, value_hi })
}

/// Rational enclosure of `ln y` for `y > 0` of width at most `2^-bits`,
/// from `ln y = 2 atanh((y-1)/(y+1))` with a geometric tail bound.
pub fn ln_enclosure(y: &Rational, bits: u32) -> Result<(Rational, Rational)> {
    if !y.is_positive() {
        return Err(Error::InvalidParameter(format!("ln needs a positive argument, got {y}")));
    }
    let one = Rational::one();
    let z = (y - &one) / (y + &one);
    if z.is_zero() {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let z2 = &z * &z;
    let eps = rational::pow2_inv(bits + 1);
    let mut sum = Rational::zero();
    let mut power = z.clone();
    let mut m: u64 = 0;
    loop {
        sum += &power / Rational::from_integer((2 * m + 1).into());
        power *= &z2;
        m += 1;
        // remaining terms are bounded by |z|^{2m+1} / ((2m+1)(1 - z²))
        let tail = power.abs() / (Rational::from_integer((2 * m + 1).into()) * (&one - &z2));
        let t = tail * int(2);
        if t <= eps {
            let s = &sum * int(2);
            return Ok((&s - &t, &s + &t));
        }
    }
}

/// `|I_k(x)| <= 1/(1-|x|)` exactly for `k <= k_max` at every grid point,
/// and the gap to `-1 + ln(1-x)` shrinks along the sweep and ends below
/// `τ(x) = 4|x|^{k_max}/(1-|x|)`.
pub fn verify_integral_bound_and_limit(k_max: u32, grid: &[Rational]) -> Result<VerificationReport> {
    require(k_max >= 2, "bound sweep needs k_max >= 2")?;
    let one = Rational::one();
    for x in grid {
        require(x.abs() < one, format!("grid point {} is outside (-1, 1)", rational::to_fraction_string(x)))?;
    }
    let grid_text: Vec<String> = grid.iter().map(rational::to_fraction_string).collect();
    let params = json!({ "k_max": k_max, "grid": grid_text });
    let mut report = VerificationReport::new("integral_bound", "bound and pointwise limit of I_k on (-1,1)", params.clone());
    let polys: Vec<_> = (1..=k_max).map(make_i).collect::<Result<_>>()?;

    let mut bound = VerificationReport::new("integral_bound.bound", "|I_k(x)| <= 1/(1-|x|)", params.clone());
    for x in grid {
        let b = &one / (&one - x.abs());
        let worst = polys.iter().map(|p| p.evaluate(x).abs()).max().expect("k_max >= 2");
        for (k, p) in polys.iter().enumerate() {
            let v = p.evaluate(x).abs();
            bound.check(v <= b, format!("x={} k={}", rational::to_fraction_string(x), k + 1), rational::to_f64(&v));
        }
        bound.witness(format!("max |I_k({})|", rational::to_fraction_string(x)), format!("{:.9}", rational::to_f64(&worst)));
    }
    report.push(bound);

    let mut lim = VerificationReport::new("integral_bound.limit", "I_k(x) -> -1 + ln(1-x)", params);
    let mid = k_max.div_ceil(2) as usize;
    for x in grid {
        let label = rational::to_fraction_string(x);
        // resolve ln(1-x) well below the expected gap |x|^{k_max}
        let digits = if x.is_zero() { 0.0 } else { -rational::to_f64(&x.abs()).log2() * k_max as f64 };
        let (ln_lo, ln_hi) = ln_enclosure(&(&one - x), 64 + digits.ceil() as u32)?;
        // gap enclosure |I_k(x) + 1 - ln(1-x)|
        let gap = |k: usize| {
            let v = polys[k - 1].evaluate(x) + &one;
            let (a, b) = ((&v - &ln_hi).abs(), (&v - &ln_lo).abs());
            let straddles = (&v - &ln_hi).is_negative() != (&v - &ln_lo).is_negative();
            let lo = if straddles { Rational::zero() } else { a.clone().min(b.clone()) };
            (lo, a.max(b))
        };
        let (_, end_hi) = gap(k_max as usize);
        let (mid_lo, _) = gap(mid);
        let tau = int(4) * pow(&x.abs(), k_max) / (&one - x.abs());
        lim.witness(format!("gap at x={label}, k={k_max}"), format!("{:.3e}", rational::to_f64(&end_hi)));
        lim.check(end_hi <= tau, format!("gap <= tau at x={label}"), rational::to_f64(&end_hi));
        if !x.is_zero() {
            lim.check(end_hi < mid_lo, format!("gap shrinks at x={label}"), format!("k={mid} -> k={k_max}"));
        }
    }
    report.push(lim);
    Ok(report)
}

fn pow(x: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn ln_two() {
        let (lo, hi) = ln_enclosure(&int(2), 80).unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!(rational::to_f64(&lo) <= ln2 + 1e-16 && rational::to_f64(&hi) >= ln2 - 1e-16);
        assert!(&hi - &lo <= rational::pow2_inv(80));
        let (lo, hi) = ln_enclosure(&ratio(1, 10), 60).unwrap();
        assert!((rational::to_f64(&lo) - 0.1f64.ln()).abs() < 1e-15);
        assert!(lo < hi);
        assert_eq!(ln_enclosure(&int(1), 10).unwrap(), (int(0), int(0)));
        assert!(ln_enclosure(&int(0), 10).is_err());
    }

    #[test]
    fn pivot_value() {
        let p = i17_pivot().unwrap();
        assert!((p.value_f64() - I17_PIVOT_VALUE).abs() < 1e-8);
        assert!((rational::to_f64(&p.x_lo) + 1.0612726215).abs() < 1e-9);
    }

    #[test]
    fn bound_rejects_outside_grid() {
        assert!(verify_integral_bound_and_limit(10, &[int(1)]).is_err());
        assert!(verify_integral_bound_and_limit(10, &[ratio(-3, 2)]).is_err());
    }

    #[test]
    fn bound_small_sweep() {
        let r = verify_integral_bound_and_limit(20, &[ratio(-1, 2), int(0), ratio(9, 10)]).unwrap();
        assert!(r.passed(), "{r:#?}");
    }
}
