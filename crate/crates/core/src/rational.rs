//! Exact parsing of user-supplied real parameters.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Parses a decimal (`1.05`, `-0.25`, `2.5e-3`) or fraction (`3/1331`)
/// literal into an exact rational.
pub fn parse_exact(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidParameter(format!("not a decimal or fraction literal: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_exact(num)?;
        let den = parse_exact(den)?;
        if den == 0 {
            return Err(Error::InvalidParameter(format!("zero denominator in {text:?}")));
        }
        return Ok(num / den);
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let exp: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if exponent.unsigned_abs() > 4096 {
        return Err(Error::InvalidParameter(format!("exponent out of range in {text:?}")));
    }

    let all_digits = format!("{int_part}{frac_part}");
    let mut num = Integer::from_str_radix(if all_digits.is_empty() { "0" } else { &all_digits }, 10)
        .map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = Integer::from(10);
    let value = if scale >= 0 {
        Rational::from(num * ten.pow(scale as u32))
    } else {
        Rational::from((num, ten.pow((-scale) as u32)))
    };
    Ok(value)
}

/// `p/q` rendering with `1 + p/q` style kept to callers.
pub fn to_fraction_string(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_exact("1.5").unwrap(), Rational::from((3, 2)));
        assert_eq!(parse_exact("1.05").unwrap(), Rational::from((21, 20)));
        assert_eq!(parse_exact("-0.25").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_exact("2.5e-3").unwrap(), Rational::from((1, 400)));
        assert_eq!(parse_exact("12").unwrap(), Rational::from(12));
        assert_eq!(parse_exact(".5").unwrap(), Rational::from((1, 2)));
        assert_eq!(parse_exact("3/1331").unwrap(), Rational::from((3, 1331)));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1.2.3", "1/0", "--1", "1e", "."] {
            assert!(parse_exact(s).is_err(), "{s}");
        }
    }
}
