//! Roots of the derivative family `D_j = F_{j+l}^{(l)}`: one positive root
//! `u_j`, one negative root `v_j` exactly when `j` is even, `u_j` increasing
//! towards 2 and `v_j` eventually decreasing.

use std::cmp::Ordering;

use serde_json::json;

use super::crossing::{central_difference, crossing_points, derivative_crossing_map};
use super::{
    check_monotone, check_trend, count_text, interval_text, require, settle_threshold, sweep, trend_checkpoints,
    Compared, Member, VerificationReport, VerifyOptions,
};
use crate::error::Result;
use crate::families::{factorial, make_d, Family};
use crate::rational::{self, int, Rational};

pub fn verify_derivative_theorem(l: u32, j_max: u32, opts: &VerifyOptions) -> Result<VerificationReport> {
    require(l >= 1, "derivative order l must be >= 1")?;
    require(j_max >= 4, format!("derivative sweep needs j_max >= 4, got {j_max}"))?;
    let params = json!({ "l": l, "j_max": j_max, "tol": rational::to_fraction_string(&opts.tol) });
    let indices: Vec<u32> = (1..=j_max).collect();
    let members = sweep(&indices, &opts.tol, |j| make_d(j, l))?;
    let mut report = VerificationReport::new("derivative", "roots of D_j = F_{j+l}^{(l)}", params.clone());

    let mut counts = VerificationReport::new(
        "derivative.root_counts",
        "D_j has one positive root, and one negative root iff j is even",
        params.clone(),
    );
    for m in &members {
        let want_neg = usize::from(m.index % 2 == 0);
        let ok = m.positive.len() == 1 && m.negative.len() == want_neg;
        counts.check(ok, format!("j={}", m.index), count_text(&m.iso));
    }
    report.push(counts);

    let mut inc = VerificationReport::new("derivative.u_increasing", "u_{j+1} > u_j", params.clone());
    let pairs: Vec<_> = members.windows(2).map(|w| (&w[0], &w[1])).collect();
    check_monotone(&mut inc, &pairs, Member::only_positive, Ordering::Greater);
    let mut pos_cross = Vec::new();
    for j in 2..=j_max {
        let c = crossing_points(Family::D, j, l as i32)?;
        inc.check(c.positive.certified, format!("crossing j={j}"), rational::to_fraction_string(&c.positive.lo));
        if j <= 6 {
            pos_cross.push(rational::to_fraction_string(&c.positive.lo));
        }
    }
    inc.witness("crossings 2k/(k+l), k=2..6", pos_cross.join(","));
    // D_2 at its crossing with D_1
    let x2 = Rational::new(4.into(), (l as i64 + 2).into());
    let d2 = make_d(2, l)?.evaluate(&x2);
    let want = Rational::from_integer(factorial(l)) * Rational::new((3 * l as i64 + 2).into(), (l as i64 + 2).into());
    inc.witness("D_2(4/(l+2))", rational::to_fraction_string(&d2));
    inc.check(d2 == want && d2 > int(0), "D_2(4/(l+2)) = l!(3l+2)/(l+2) > 0", rational::to_fraction_string(&d2));
    report.push(inc);

    let mut lim = VerificationReport::new("derivative.u_limit", "u_j -> 2", params.clone());
    check_trend(&mut lim, &members, &trend_checkpoints(1, j_max), Member::only_positive, &int(2));
    report.push(lim);

    let mut dec = VerificationReport::new(
        "derivative.v_decreasing",
        "v_{n+2} < v_n for all even n beyond some even N_0",
        params,
    );
    let evens: Vec<&Member> = members.iter().filter(|m| m.index % 2 == 0).collect();
    let idx: Vec<u32> = evens.iter().take(evens.len().saturating_sub(1)).map(|m| m.index).collect();
    let ok: Vec<bool> = evens
        .windows(2)
        .map(|w| compare_members(w[1], w[0]) == Compared::Ordered(Ordering::Less))
        .collect();
    settle_threshold(&mut dec, &idx, &ok);
    for w in evens.windows(2) {
        if let Some(c) = crossing_points(Family::D, w[1].index, l as i32)?.negative {
            dec.check(c.certified && c.residual < 1e-10, format!("negative crossing j={}", w[1].index), c.residual);
        }
    }
    if let Some(last) = evens.last().and_then(|m| m.only_negative()) {
        dec.witness(format!("v_{j_max}"), interval_text(&last.interval));
    }
    let slope = central_difference(|x| derivative_crossing_map(l as i32, x), 0.0, 1e-5);
    dec.witness("crossing map slope at 0 (central difference)", format!("{slope:.6}"));
    dec.check(slope > 0.0, "crossing map increasing at 0", slope);
    report.push(dec);
    Ok(report)
}

fn compare_members(a: &Member, b: &Member) -> Compared {
    super::compare_members(a, b, Member::only_negative)
}
