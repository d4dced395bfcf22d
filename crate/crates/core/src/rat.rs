//! Exact rational scalars: construction, text parsing, and table formatting.
//!
//! Every analysis quantity in this crate (cone coordinates, LP objectives,
//! pseudo-weights) is a `BigRational`. Decimal strings are converted exactly,
//! so `0.05` is 1/20, not the nearest double.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Shorthand used across the crate for exact rational scalars.
pub type Q = BigRational;

/// Rational from a machine integer.
pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Rational from an unsigned count.
pub fn qu(v: usize) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Parses a rational from integer (`-3`), fraction (`14/3`), or decimal
/// (`4.67`) notation. Decimals convert exactly.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let bad = |_| Error::Parse(format!("malformed number `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(bad)?;
        let d: BigInt = den.trim().parse().map_err(bad)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" {
            if negative { "-0" } else { "0" }
        } else {
            int_part
        };
        let i: BigInt = int_part.parse().map_err(bad)?;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("malformed number `{s}`")));
        }
        let f: BigInt = frac_part.parse().map_err(bad)?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = Q::new(f, scale);
        let whole = Q::from_integer(i);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let i: BigInt = s.parse().map_err(bad)?;
    Ok(Q::from_integer(i))
}

/// Rounds to two decimals, half away from zero, and renders as `d.dd`.
/// This is the table formatting used throughout the CLI.
pub fn round2(q: &Q) -> String {
    let scaled = (q * qi(100)).round();
    let negative = scaled.is_negative();
    let cents = scaled.numer().abs();
    let hundred = BigInt::from(100);
    let whole = &cents / &hundred;
    let frac = &cents % &hundred;
    let sign = if negative { "-" } else { "" };
    format!("{sign}{whole}.{frac:02}")
}

/// Exact value plus its two-decimal rounding, e.g. `14/3 (4.67)`;
/// integers print bare.
pub fn fmt_exact(q: &Q) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{} ({})", q, round2(q))
    }
}

/// Nearest double, for CSV output and channel arithmetic.
pub fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational equal to the given double. Errors on non-finite input.
pub fn from_f64(x: f64) -> Result<Q> {
    Q::from_float(x).ok_or_else(|| Error::Parse(format!("non-finite value {x}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_fraction_decimal() {
        assert_eq!(parse_q("-3").unwrap(), qi(-3));
        assert_eq!(parse_q("14/3").unwrap(), Q::new(14.into(), 3.into()));
        assert_eq!(parse_q("4.67").unwrap(), Q::new(467.into(), 100.into()));
        assert_eq!(parse_q("0.05").unwrap(), Q::new(1.into(), 20.into()));
        assert_eq!(parse_q("-0.5").unwrap(), Q::new((-1).into(), 2.into()));
        assert_eq!(parse_q(".25").unwrap(), Q::new(1.into(), 4.into()));
    }

    #[test]
    fn rejects_junk() {
        assert!(parse_q("").is_err());
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("1.2.3").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("1.2e3").is_err());
    }

    #[test]
    fn rounds_half_away_from_zero() {
        assert_eq!(round2(&Q::new(20.into(), 3.into())), "6.67");
        assert_eq!(round2(&Q::new(169.into(), 28.into())), "6.04");
        assert_eq!(round2(&Q::new(676.into(), 80.into())), "8.45");
        assert_eq!(round2(&qi(4)), "4.00");
        assert_eq!(round2(&Q::new((-1).into(), 8.into())), "-0.13");
    }

    #[test]
    fn formats_exact_values() {
        assert_eq!(fmt_exact(&qi(3)), "3");
        assert_eq!(fmt_exact(&Q::new(14.into(), 3.into())), "14/3 (4.67)");
    }
}
