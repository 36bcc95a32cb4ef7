//! Exact rational scalars used for every coordinate in the crate.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Q = BigRational;

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn half() -> Q {
    q(1, 2)
}

pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / int(2)
}

/// Parses `7`, `-3/4` or a finite decimal such as `0.125` into an exact rational.
pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", whole_digits, frac);
        let mut n: BigInt = digits.parse().ok()?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(Q::new(n, d));
    }
    let n: BigInt = text.parse().ok()?;
    Some(Q::from_integer(n))
}

/// Formats as `n` or `n/d`; the inverse of [`parse_q`].
pub fn fmt_q(value: &Q) -> String {
    let mut out = String::new();
    if value.denom().is_one() {
        let _ = write!(out, "{}", value.numer());
    } else {
        let _ = write!(out, "{}/{}", value.numer(), value.denom());
    }
    out
}

pub fn is_between_open(t: &Q) -> bool {
    t.is_positive() && t < &one()
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_q("3/4"), Some(q(3, 4)));
        assert_eq!(parse_q("-1/2"), Some(q(-1, 2)));
        assert_eq!(parse_q("0.125"), Some(q(1, 8)));
        assert_eq!(parse_q("-1.5"), Some(q(-3, 2)));
        assert_eq!(parse_q("2"), Some(int(2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("a"), None);
        assert_eq!(parse_q("1."), None);
    }

    #[test]
    fn format_round_trips() {
        for v in [q(3, 4), int(-2), q(-7, 3), zero()] {
            assert_eq!(parse_q(&fmt_q(&v)), Some(v));
        }
    }
}
