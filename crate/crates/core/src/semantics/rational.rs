use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact rational numbers used throughout.
pub type Q = BigRational;

/// Parses `num/den` or a bare integer. Decimals are rejected on purpose so
/// that no binary floating point value sneaks in.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::BadRational(s.to_string());
    let int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(int(n)?, d))
        }
        None => Ok(Q::from_integer(int(s)?)),
    }
}

/// Formats as `num/den` in lowest terms, with `den = 1` spelled out.
pub fn format_rational(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("1").unwrap()), "1/1");
        assert_eq!(format_rational(&parse_rational("0/7").unwrap()), "0/1");
        for bad in ["0.5", "1/0", "", "a/b", "1/", "+1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
