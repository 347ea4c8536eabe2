//! Exact rationals. Distances, grids and Skorokhod values never touch floats.

use alloc::format;
use alloc::string::String;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{domain, Result};

/// Exact rational number.
pub type Q = Ratio<i64>;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Ratio::from_integer(n)
}

/// `n/d` as a rational; panics on a zero denominator.
pub fn qr(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| domain(format!("bad rational numerator in {s:?}")))?;
    let d: i64 = d.parse().map_err(|_| domain(format!("bad rational denominator in {s:?}")))?;
    if d == 0 {
        return Err(domain(format!("zero denominator in {s:?}")));
    }
    Ok(Ratio::new(n, d))
}

/// Formats as `"p/q"` (always with a denominator).
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn abs_diff(a: &Q, b: &Q) -> Q {
    (a - b).abs()
}

pub fn is_positive(x: &Q) -> bool {
    !x.is_zero() && x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        assert_eq!(parse_q("3/6").unwrap(), qr(1, 2));
        assert_eq!(parse_q("4").unwrap(), q(4));
        assert_eq!(format_q(&qr(2, 4)), "1/2");
        assert_eq!(format_q(&q(0)), "0/1");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
