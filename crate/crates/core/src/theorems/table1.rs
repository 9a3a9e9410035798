//! Which of `(-1,0)`, `(0,1]`, `(1,2)` contain a root of `F_n`, `F_n'`,
//! `F_n''` for even and odd `n`, plus the exact special values of the
//! families at small parameters.

use serde_json::json;

use super::surd::Surd;
use super::{require, Status, VerificationReport};
use crate::error::Result;
use crate::families::{make_d, make_f, make_i};
use crate::poly::ExactPoly;
use crate::rational::{self, int, ratio, Rational};
use crate::realroots::RootIsolator;

#[derive(Debug, Clone, Copy)]
enum Row {
    MinusOneZero,
    ZeroOne,
    OneTwo,
}

impl Row {
    const ALL: [Row; 3] = [Row::MinusOneZero, Row::ZeroOne, Row::OneTwo];

    fn label(self) -> &'static str {
        match self {
            Row::MinusOneZero => "(-1,0)",
            Row::ZeroOne => "(0,1]",
            Row::OneTwo => "(1,2)",
        }
    }

    fn count(self, p: &ExactPoly) -> Result<usize> {
        if p.degree()? == 0 {
            return Ok(0);
        }
        let iso = RootIsolator::new(p)?;
        Ok(match self {
            Row::MinusOneZero => iso.count_open(&int(-1), &int(0)),
            Row::ZeroOne => iso.count(int(0), int(1)),
            Row::OneTwo => iso.count_open(&int(1), &int(2)),
        })
    }
}

/// Column `(parity, derivative order)`: `F_{2k+parity}^{(order)}`.
const COLUMNS: [(u32, usize); 6] = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)];

fn column_label(parity: u32, order: usize) -> String {
    let n = if parity == 0 { "2k" } else { "2k+1" };
    format!("F{}_{{{n}}}", "'".repeat(order))
}

/// Expected answer as a function of `k`, with the caveat text.
fn expected(row: Row, col: (u32, usize)) -> (&'static str, fn(u32) -> bool) {
    match (row, col) {
        (Row::MinusOneZero, (0, 0)) => ("yes", |_| true),
        (Row::MinusOneZero, (1, 0)) => ("no", |_| false),
        (Row::MinusOneZero, (0, 1)) => ("no", |_| false),
        (Row::MinusOneZero, (1, 1)) => ("yes", |_| true),
        (Row::MinusOneZero, (0, 2)) => ("yes (k>1)", |k| k > 1),
        (Row::MinusOneZero, (1, 2)) => ("no", |_| false),
        (Row::ZeroOne, (0, 0)) => ("no", |_| false),
        (Row::ZeroOne, (1, 0)) => ("no", |_| false),
        (Row::ZeroOne, (0, 1)) => ("yes (k=1)", |k| k == 1),
        (Row::ZeroOne, (1, 1)) => ("yes (k=1)", |k| k == 1),
        (Row::ZeroOne, (0, 2)) => ("yes (k=2)", |k| k == 2),
        (Row::ZeroOne, (1, 2)) => ("yes (k=1,2)", |k| k == 1 || k == 2),
        (Row::OneTwo, (0, 0)) => ("yes", |_| true),
        (Row::OneTwo, (1, 0)) => ("yes", |_| true),
        (Row::OneTwo, (0, 1)) => ("yes (k>1)", |k| k > 1),
        (Row::OneTwo, (1, 1)) => ("yes (k>1)", |k| k > 1),
        (Row::OneTwo, (0, 2)) => ("yes (k>2)", |k| k > 2),
        (Row::OneTwo, (1, 2)) => ("yes (k>2)", |k| k > 2),
        _ => unreachable!(),
    }
}

/// Checks all 18 cells for `k = 1..=k_max` with exact Sturm counts.
pub fn verify_table1(k_max: u32) -> Result<VerificationReport> {
    require(k_max >= 3, format!("table sweep needs k_max >= 3, got {k_max}"))?;
    let mut report = VerificationReport::new(
        "table1",
        "root location of F_n, F_n', F_n'' in (-1,0), (0,1], (1,2)",
        json!({ "k_max": k_max }),
    );
    for row in Row::ALL {
        for col in COLUMNS {
            let (text, want) = expected(row, col);
            let name = column_label(col.0, col.1);
            let mut cell = VerificationReport::new(
                &format!("table1.{}.{}", row.label(), name),
                &format!("{} on {}: {}", name, row.label(), text),
                json!({ "k_max": k_max, "interval": row.label(), "column": name }),
            );
            let mut counts = Vec::new();
            for k in 1..=k_max {
                let p = make_f(2 * k + col.0)?.nth_derivative(col.1);
                let n = row.count(&p)?;
                counts.push(n.to_string());
                cell.check((n > 0) == want(k), format!("k={k}"), format!("{n} roots"));
            }
            cell.witness("root counts k=1..", counts.join(","));
            report.push(cell);
        }
    }
    report.note(format!("{} cells checked", report.items.len()));
    Ok(report)
}

/// Exact special values of the families.
pub fn verify_special_values() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("special_values", "exact values at small parameters", json!({}));
    let f = |k: u32, order: usize| make_f(k).map(|p| p.nth_derivative(order));

    let mut exact = |id: &str, anchor: &str, got: Rational, want: Rational| {
        let mut item = VerificationReport::new(id, anchor, json!({}));
        item.witness("value", rational::to_fraction_string(&got));
        item.check(got == want, "expected", rational::to_fraction_string(&want));
        report.push(item);
    };
    exact("special.F3p_at_1", "F_3'(1) = 0", f(3, 1)?.evaluate(&int(1)), int(0));
    exact("special.F2p_at_half", "F_2'(1/2) = 0", f(2, 1)?.evaluate(&ratio(1, 2)), int(0));
    exact("special.F2pp", "F_2'' = 2", f(2, 2)?.evaluate(&int(0)), int(2));
    exact("special.F3pp_at_third", "F_3''(1/3) = 0", f(3, 2)?.evaluate(&ratio(1, 3)), int(0));
    exact("special.F5pp_at_1", "F_5''(1) = 0", f(5, 2)?.evaluate(&int(1)), int(0));
    exact("special.I5_at_minus1", "I_5(-1) = -1/20", make_i(5)?.evaluate(&int(-1)), ratio(-1, 20));
    exact("special.I5_at_minus2", "I_5(-2) = 221/15", make_i(5)?.evaluate(&int(-2)), ratio(221, 15));
    exact("special.I1_at_2", "I_1(2) = -1", make_i(1)?.evaluate(&int(2)), int(-1));
    exact("special.I1_at_3", "I_1(3) = 1/2", make_i(1)?.evaluate(&int(3)), ratio(1, 2));
    for l in 1..=6u32 {
        let d0 = make_d(0, l)?;
        let lf = Rational::from_integer(crate::families::factorial(l));
        exact(&format!("special.D0_l{l}"), "D_0 = l!", d0.evaluate(&int(0)), lf);
    }

    // F_4'' = 12x² - 6x - 2 vanishes at (1 + √(11/3))/4
    let mut item = VerificationReport::new("special.F4pp_surd", "F_4''((1 + sqrt(11/3))/4) = 0", json!({}));
    let x = Surd::new(ratio(1, 4), ratio(1, 4), ratio(11, 3))?;
    let v = x.eval(&f(4, 2)?);
    item.witness("x", format!("{:.15}", x.to_f64()));
    item.check(v.is_zero(), "value", format!("{} + {} sqrt(11/3)", v.a, v.b));
    report.push(item);

    if report.status == Status::Pass {
        report.note(format!("{} exact equalities", report.items.len()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_for_small_sweep() {
        let r = verify_table1(6).unwrap();
        assert_eq!(r.items.len(), 18);
        assert!(r.passed(), "{:#?}", r.items.iter().filter(|i| !i.passed()).collect::<Vec<_>>());
    }

    #[test]
    fn closed_right_endpoint_counts() {
        // F_3'(x) = 3x² - 2x - 1 has its root exactly at 1
        let p = make_f(3).unwrap().derivative();
        assert_eq!(Row::ZeroOne.count(&p).unwrap(), 1);
        assert_eq!(RootIsolator::new(&p).unwrap().count_open(&int(0), &int(1)), 0);
    }

    #[test]
    fn table_rejects_small_kmax() {
        assert!(verify_table1(2).is_err());
    }

    #[test]
    fn special_values_hold() {
        let r = verify_special_values().unwrap();
        assert!(r.passed(), "{r:#?}");
    }
}
