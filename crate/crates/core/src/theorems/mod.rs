//! Verification harness. Each `verify_*` sweeps a parameter range, certifies
//! the claims it can with exact arithmetic (Sturm counts, disjoint rational
//! enclosures, exact evaluation) and returns a [`VerificationReport`] with
//! one sub-report per claim.
//!
//! Claims asserting that something holds "for sufficiently large" index are
//! turned into discover-and-verify: the smallest index from which the claim
//! holds through the end of the sweep is reported as
//! `discovered_threshold`; if the claim fails at the last swept index no
//! threshold exists and the status is `partial`.

use std::cmp::Ordering;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::rational::{self, Rational};
use crate::realroots::{default_tolerance, IsolatingInterval, RootIsolator, RootRecord};

mod complex;
pub mod crossing;
mod derivative;
mod first_integral;
mod general_integral;
mod identities;
pub mod surd;
mod table1;

pub use complex::verify_complex_bounds;
pub use crossing::{crossing_points, Crossing, Crossings};
pub use derivative::verify_derivative_theorem;
pub use first_integral::{ln_enclosure, verify_first_integral_theorem, verify_integral_bound_and_limit};
pub use general_integral::verify_general_integral_theorem;
pub use identities::verify_identities;
pub use table1::{verify_special_values, verify_table1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Partial,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }

    /// Worst of two statuses.
    pub fn and(self, other: Status) -> Status {
        self.max(other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub param: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub paper_anchor: String,
    pub params: serde_json::Value,
    pub status: Status,
    pub discovered_threshold: Option<i64>,
    pub witnesses: Vec<Witness>,
    pub notes: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<VerificationReport>,
}

impl VerificationReport {
    pub fn new(claim_id: &str, anchor: &str, params: serde_json::Value) -> Self {
        VerificationReport {
            claim_id: claim_id.to_string(),
            paper_anchor: anchor.to_string(),
            params,
            status: Status::Pass,
            discovered_threshold: None,
            witnesses: Vec::new(),
            notes: String::new(),
            items: Vec::new(),
        }
    }

    pub fn witness(&mut self, param: impl Into<String>, value: impl ToString) {
        self.witnesses.push(Witness { param: param.into(), value: value.to_string() });
    }

    /// Records a check: a failure downgrades the status and is kept as a
    /// witness.
    pub fn check(&mut self, ok: bool, param: impl Into<String>, value: impl ToString) {
        if !ok {
            self.status = self.status.and(Status::Fail);
            self.witness(format!("FAILED {}", param.into()), value);
        }
    }

    pub fn note(&mut self, s: impl AsRef<str>) {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(s.as_ref());
    }

    pub fn push(&mut self, item: VerificationReport) {
        self.status = self.status.and(item.status);
        self.items.push(item);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Depth-first search by claim id.
    pub fn find(&self, claim_id: &str) -> Option<&VerificationReport> {
        if self.claim_id == claim_id {
            return Some(self);
        }
        self.items.iter().find_map(|i| i.find(claim_id))
    }

    pub fn claim_ids(&self) -> Vec<String> {
        let mut out = vec![self.claim_id.clone()];
        for i in &self.items {
            out.extend(i.claim_ids());
        }
        out
    }
}

/// Tolerance and seed shared by all sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub tol: Rational,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tol: default_tolerance(), seed: crate::complexroots::DEFAULT_SEED }
    }
}

/// Exact root data for one member of a swept family.
#[derive(Debug, Clone)]
pub(crate) struct Member {
    pub index: u32,
    pub iso: RootIsolator,
    pub negative: Vec<RootRecord>,
    pub positive: Vec<RootRecord>,
}

impl Member {
    pub fn analyze(index: u32, poly: &ExactPoly, tol: &Rational) -> Result<Self> {
        let iso = RootIsolator::new(poly)?;
        let zero = rational::int(0);
        let mut negative = Vec::new();
        let mut positive = Vec::new();
        for iv in iso.isolate()? {
            // split intervals straddling the origin so every enclosure has a
            // certified sign
            let iv = if iv.lo < zero && zero < iv.hi && iso.sign_at(&zero) != 0 {
                if iso.count(&iv.lo, &zero) == 1 {
                    IsolatingInterval { lo: iv.lo, hi: zero.clone(), sign_lo: iv.sign_lo, sign_hi: iso.sign_at(&zero) }
                } else {
                    IsolatingInterval { lo: zero.clone(), hi: iv.hi, sign_lo: iso.sign_at(&zero), sign_hi: iv.sign_hi }
                }
            } else {
                iv
            };
            let rec = iso.record(&iv, tol, None)?;
            if rec.interval.hi <= zero {
                negative.push(rec);
            } else {
                positive.push(rec);
            }
        }
        Ok(Member { index, iso, negative, positive })
    }

    pub fn only_positive(&self) -> Option<&RootRecord> {
        (self.positive.len() == 1).then(|| &self.positive[0])
    }

    pub fn only_negative(&self) -> Option<&RootRecord> {
        (self.negative.len() == 1).then(|| &self.negative[0])
    }
}

/// Analyzes every index in parallel, preserving order.
pub(crate) fn sweep<F>(indices: &[u32], tol: &Rational, build: F) -> Result<Vec<Member>>
where
    F: Fn(u32) -> Result<ExactPoly> + Sync,
{
    indices
        .par_iter()
        .map(|&i| Member::analyze(i, &build(i)?, tol))
        .collect()
}

/// Certified strict comparison of two roots through their enclosures,
/// tightening both once if they overlap.
pub(crate) fn certified_cmp(a: (&RootIsolator, &RootRecord), b: (&RootIsolator, &RootRecord)) -> Option<Ordering> {
    if let Some(o) = a.1.interval.strict_cmp(&b.1.interval) {
        return Some(o);
    }
    let tighter = &a.1.tol * rational::pow2_inv(40);
    let ia = a.0.refine(&a.1.interval, &tighter).ok()?;
    let ib = b.0.refine(&b.1.interval, &tighter).ok()?;
    ia.strict_cmp(&ib)
}

/// Outcome of comparing two roots of neighbouring members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Compared {
    Ordered(Ordering),
    /// Enclosures still overlap after one tightening.
    Overlap,
    /// One of the members lacks the root.
    Missing,
}

pub(crate) fn compare_members(a: &Member, b: &Member, pick: fn(&Member) -> Option<&RootRecord>) -> Compared {
    match (pick(a), pick(b)) {
        (Some(ra), Some(rb)) => match certified_cmp((&a.iso, ra), (&b.iso, rb)) {
            Some(o) => Compared::Ordered(o),
            None => Compared::Overlap,
        },
        _ => Compared::Missing,
    }
}

/// Certifies `pick(next) want pick(prev)` for every listed pair of
/// members; overlap downgrades to partial.
pub(crate) fn check_monotone(
    report: &mut VerificationReport,
    pairs: &[(&Member, &Member)],
    pick: fn(&Member) -> Option<&RootRecord>,
    want: Ordering,
) {
    for (prev, next) in pairs {
        let label = format!("k={} vs k={}", next.index, prev.index);
        match compare_members(next, prev, pick) {
            Compared::Ordered(o) => report.check(o == want, label, format!("{o:?}")),
            Compared::Overlap => {
                report.status = report.status.and(Status::Partial);
                report.witness(format!("OVERLAP {label}"), "enclosures not disjoint after tightening");
            }
            Compared::Missing => report.check(false, label, "root missing"),
        }
    }
}

/// Certifies `|r(k_1) - c| > |r(k_2) - c| > ...` along the checkpoints.
pub(crate) fn check_trend(
    report: &mut VerificationReport,
    members: &[Member],
    checkpoints: &[u32],
    pick: fn(&Member) -> Option<&RootRecord>,
    limit: &Rational,
) {
    let mut prev: Option<(u32, IsolatingInterval)> = None;
    for &k in checkpoints {
        let Some(m) = members.iter().find(|m| m.index == k) else {
            report.check(false, format!("checkpoint k={k}"), "not swept");
            continue;
        };
        let Some(r) = pick(m) else {
            report.check(false, format!("checkpoint k={k}"), "root missing");
            continue;
        };
        let (_, hi) = distance_enclosure(&r.interval, limit);
        report.witness(format!("|root - {}| at k={k}", limit), format!("{:.6e}", rational::to_f64(&hi)));
        if let Some((pk, piv)) = &prev {
            let closer = certified_closer(&r.interval, piv, limit);
            report.check(closer, format!("gap k={k} < gap k={pk}"), "not certified");
        }
        prev = Some((k, r.interval.clone()));
    }
}

/// Checkpoints `k_max/4, k_max/2, k_max` (rounded up), restricted to the
/// sweep and deduplicated.
pub(crate) fn trend_checkpoints(first: u32, k_max: u32) -> Vec<u32> {
    let mut v: Vec<u32> = [k_max.div_ceil(4), k_max.div_ceil(2), k_max]
        .into_iter()
        .filter(|&k| k >= first)
        .collect();
    v.dedup();
    v
}

/// Discover-and-verify for an eventual claim over `indices`: reports the
/// minimal threshold, re-checks that the claim fails just below it, and
/// sets status partial when no threshold exists within the sweep.
pub(crate) fn settle_threshold(report: &mut VerificationReport, indices: &[u32], ok: &[bool]) {
    match discover_threshold(indices, ok) {
        Some(t) => {
            report.discovered_threshold = Some(t as i64);
            let pos = indices.iter().position(|&i| i == t).expect("threshold is an index");
            if pos > 0 {
                report.check(!ok[pos - 1], format!("minimality at {}", indices[pos - 1]), "claim already holds");
                report.witness("fails at", indices[pos - 1]);
            }
            let failing: Vec<String> = indices[..pos]
                .iter()
                .zip(ok)
                .filter(|(_, &b)| !b)
                .map(|(i, _)| i.to_string())
                .collect();
            if !failing.is_empty() {
                report.witness("fails below threshold at", failing.join(","));
            }
        }
        None => {
            report.status = report.status.and(Status::Partial);
            report.note("no threshold within the sweep: the claim fails at the last swept index");
        }
    }
}

/// Enclosure of `|x - c|` for `x` in the interval.
pub(crate) fn distance_enclosure(iv: &IsolatingInterval, c: &Rational) -> (Rational, Rational) {
    let a = (&iv.lo - c).abs();
    let b = (&iv.hi - c).abs();
    let hi = a.clone().max(b.clone());
    let lo = if iv.contains(c) { rational::int(0) } else { a.min(b) };
    (lo, hi)
}

/// Certifies `|x - c| < |y - c|` for roots `x`, `y` with the given
/// enclosures.
pub(crate) fn certified_closer(x: &IsolatingInterval, y: &IsolatingInterval, c: &Rational) -> bool {
    distance_enclosure(x, c).1 < distance_enclosure(y, c).0
}

/// Smallest index from which `ok` holds through the end of the sequence.
pub fn discover_threshold(indices: &[u32], ok: &[bool]) -> Option<u32> {
    if ok.last() != Some(&true) {
        return None;
    }
    let tail = ok.iter().rev().take_while(|&&b| b).count();
    Some(indices[indices.len() - tail])
}

pub(crate) fn interval_text(iv: &IsolatingInterval) -> String {
    format!("[{:.15}, {:.15}]", rational::to_f64(&iv.lo), rational::to_f64(&iv.hi))
}

pub(crate) fn count_text(iso: &RootIsolator) -> String {
    let neg = iso.count_negative();
    let pos = iso.count_positive();
    format!("{neg} negative, {pos} positive")
}

pub(crate) fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond { Ok(()) } else { Err(Error::InvalidParameter(msg.into())) }
}

/// Claims selectable from the command line.
pub const CLAIM_GROUPS: &[&str] = &[
    "table1",
    "special",
    "identity",
    "derivative",
    "first_integral",
    "bound",
    "general_integral",
    "complex",
];

/// Sweep ranges for [`run_claims`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub table_kmax: u32,
    pub derivative_orders: Vec<u32>,
    pub derivative_jmax: u32,
    pub first_integral_kmax: u32,
    pub bound_kmax: u32,
    pub bound_grid: Vec<String>,
    pub general_orders: Vec<i32>,
    pub general_kmax: u32,
    pub complex_degree_cap: u32,
    pub identity_samples: usize,
    pub identity_nmax: u32,
    pub polya_nmax: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            table_kmax: 12,
            derivative_orders: vec![1, 2, 3, 4],
            derivative_jmax: 40,
            first_integral_kmax: 60,
            bound_kmax: 60,
            bound_grid: ["-9/10", "-1/2", "-1/10", "0/1", "1/10", "1/2", "9/10"].map(String::from).to_vec(),
            general_orders: vec![0, 1, 2],
            general_kmax: 40,
            complex_degree_cap: 30,
            identity_samples: 100,
            identity_nmax: 15,
            polya_nmax: 20,
        }
    }
}

/// Runs the selected claim groups (`all` selects every group).
pub fn run_claims(claims: &[String], sweep: &SweepConfig, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let all = claims.iter().any(|c| c == "all");
    let selected: Vec<&str> = CLAIM_GROUPS
        .iter()
        .copied()
        .filter(|g| all || claims.iter().any(|c| c == g))
        .collect();
    for c in claims {
        if c != "all" && !CLAIM_GROUPS.contains(&c.as_str()) {
            return Err(Error::InvalidParameter(format!("unknown claim group {c:?}")));
        }
    }
    let mut out = Vec::new();
    for g in selected {
        match g {
            "table1" => out.push(verify_table1(sweep.table_kmax)?),
            "special" => out.push(verify_special_values()?),
            "identity" => out.push(verify_identities(sweep.identity_samples, sweep.identity_nmax, sweep.polya_nmax, opts.seed)?),
            "derivative" => {
                for &l in &sweep.derivative_orders {
                    out.push(verify_derivative_theorem(l, sweep.derivative_jmax, opts)?);
                }
            }
            "first_integral" => out.push(verify_first_integral_theorem(sweep.first_integral_kmax, opts)?),
            "bound" => {
                let grid = sweep
                    .bound_grid
                    .iter()
                    .map(|s| rational::parse_fraction(s))
                    .collect::<Result<Vec<_>>>()?;
                out.push(verify_integral_bound_and_limit(sweep.bound_kmax, &grid)?);
            }
            "general_integral" => {
                for &l in &sweep.general_orders {
                    out.push(verify_general_integral_theorem(l, sweep.general_kmax, opts)?);
                }
            }
            "complex" => out.push(verify_complex_bounds(sweep.complex_degree_cap, opts)?),
            _ => unreachable!(),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_discovery() {
        let idx = [2, 4, 6, 8, 10];
        assert_eq!(discover_threshold(&idx, &[true; 5]), Some(2));
        assert_eq!(discover_threshold(&idx, &[false, true, false, true, true]), Some(8));
        assert_eq!(discover_threshold(&idx, &[true, true, true, true, false]), None);
        assert_eq!(discover_threshold(&[], &[]), None);
    }

    #[test]
    fn status_merge() {
        assert_eq!(Status::Pass.and(Status::Partial), Status::Partial);
        assert_eq!(Status::Partial.and(Status::Fail), Status::Fail);
        let mut r = VerificationReport::new("x", "a", serde_json::json!({}));
        r.check(true, "p", 1);
        assert!(r.passed() && r.witnesses.is_empty());
        r.check(false, "q", 2);
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn distance_enclosures() {
        let iv = IsolatingInterval { lo: rational::ratio(3, 2), hi: rational::ratio(7, 4), sign_lo: -1, sign_hi: 1 };
        let (lo, hi) = distance_enclosure(&iv, &rational::int(2));
        assert_eq!(lo, rational::ratio(1, 4));
        assert_eq!(hi, rational::ratio(1, 2));
    }

    #[test]
    fn unknown_claim_rejected() {
        let r = run_claims(&["nope".into()], &SweepConfig::default(), &VerifyOptions::default());
        assert!(r.is_err());
    }
}
