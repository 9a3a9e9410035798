//! Helpers for exact rationals: text round-trips, decimal rendering and
//! float conversion.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^-bits` as an exact rational.
pub fn pow2_inv(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// `10^-digits` as an exact rational.
pub fn pow10_inv(digits: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}

/// Renders as `num/den`, always with an explicit denominator.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_fraction(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Parses decimal or scientific notation (`1e-12`, `0.25`, `-3.5E2`) into
/// the exact rational the text denotes. Fractions `a/b` are accepted too.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.contains('/') {
        return parse_fraction(t);
    }
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(r)
}

/// Truncated decimal expansion with `digits` places after the point.
pub fn to_decimal_string(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (a.numer() * &scale).div_floor(a.denom());
    let (ip, fp) = scaled.div_rem(&scale);
    let mut s = String::new();
    if neg && !(ip.is_zero() && fp.is_zero()) {
        s.push('-');
    }
    s.push_str(&ip.to_string());
    if digits > 0 {
        let f = fp.to_string();
        s.push('.');
        s.push_str(&"0".repeat(digits - f.len()));
        s.push_str(&f);
    }
    s
}

/// Nearest-ish f64. Handles numerators and denominators far outside the
/// f64 range by shifting both to ~64 significant bits first.
pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    let (n, d) = (r.numer(), r.denom());
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let nn = (n >> shift_n as usize).to_f64().unwrap_or(f64::NAN);
    let dd = (d >> shift_d as usize).to_f64().unwrap_or(f64::NAN);
    nn / dd * 2f64.powi((shift_n - shift_d) as i32)
}

/// Exact rational equal to a finite f64.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn sign(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_text() {
        assert_eq!(to_fraction_string(&ratio(-6, 4)), "-3/2");
        assert_eq!(to_fraction_string(&int(5)), "5/1");
        assert_eq!(parse_fraction("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_fraction("7").unwrap(), int(7));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("x").is_err());
    }

    #[test]
    fn decimal_text() {
        assert_eq!(parse_decimal("1e-12").unwrap(), pow10_inv(12));
        assert_eq!(parse_decimal("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_decimal("-3.5E2").unwrap(), int(-350));
        assert_eq!(parse_decimal("1/3").unwrap(), ratio(1, 3));
        assert!(parse_decimal("e5").is_err());
        assert!(parse_decimal("1.2.3").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal_string(&ratio(1, 3), 5), "0.33333");
        assert_eq!(to_decimal_string(&ratio(-5, 2), 2), "-2.50");
        assert_eq!(to_decimal_string(&ratio(1, 20), 3), "0.050");
        assert_eq!(to_decimal_string(&int(3), 0), "3");
    }

    #[test]
    fn float_conversion_of_huge_values() {
        let big = Rational::new(BigInt::one() << 3000usize, (BigInt::one() << 2999usize) * BigInt::from(3));
        assert!((to_f64(&big) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(to_f64(&ratio(-1, 4)), -0.25);
    }
}
