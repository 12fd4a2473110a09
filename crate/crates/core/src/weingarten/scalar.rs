//! Exact complex scalars and their text form.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// A complex number with exact rational real and imaginary parts.
pub type GaussianRational = Complex<BigRational>;

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_int(n: i64) -> GaussianRational {
    Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
}

pub fn from_real(r: BigRational) -> GaussianRational {
    Complex::new(r, BigRational::zero())
}

pub fn from_parts(re: BigRational, im: BigRational) -> GaussianRational {
    Complex::new(re, im)
}

/// The real part, panicking if the imaginary part is non-zero.
///
/// Used where a value is real by construction; a non-zero imaginary part
/// means a convention bug upstream.
pub fn expect_real(z: &GaussianRational, what: &str) -> BigRational {
    assert!(z.im.is_zero(), "{what} should be real, got {}", format_gaussian(z));
    z.re.clone()
}

pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

/// `a`, `bi`, `a+bi` or `a-bi` with exact rational parts.
pub fn format_gaussian(z: &GaussianRational) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => format!("{}i", z.im),
        (false, false) if z.im.is_negative() => format!("{}-{}i", z.re, -z.im.clone()),
        (false, false) => format!("{}+{}i", z.re, z.im),
    }
}

/// Parses an exact rational from `p/q`, an integer, or a finite decimal
/// with an optional exponent (`0.125`, `-3e-2`).
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let err = || Error::Parse(format!("`{text}` is not a rational number"));
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("`{text}` has a zero denominator")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().map_err(|_| err())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rational(3, 4));
        assert_eq!(parse_rational(" -6/8 ").unwrap(), rational(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
        assert_eq!(parse_rational("0.125").unwrap(), rational(1, 8));
        assert_eq!(parse_rational("-2.5").unwrap(), rational(-5, 2));
        assert_eq!(parse_rational("1e3").unwrap(), rational(1000, 1));
        assert_eq!(parse_rational("-3e-2").unwrap(), rational(-3, 100));
        assert_eq!(parse_rational(".5").unwrap(), rational(1, 2));
        for bad in ["", "1/0", "abc", "1.2.3", "--1", "1/x", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_exactly() {
        assert_eq!(format_rational(&rational(-1, 24)), "-1/24");
        assert_eq!(format_rational(&rational(4, 2)), "2");
        assert_eq!(format_gaussian(&from_parts(rational(1, 2), rational(-1, 3))), "1/2-1/3i");
        assert_eq!(format_gaussian(&from_parts(rational(0, 1), rational(2, 1))), "2i");
        assert_eq!(format_gaussian(&from_int(0)), "0");
    }

    #[test]
    fn field_arithmetic_and_conjugation() {
        let a = from_parts(rational(1, 2), rational(3, 1));
        let b = from_parts(rational(-2, 3), rational(1, 5));
        assert_eq!((&a * &b) / &b, a);
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * a.conj()).im, BigRational::zero());
    }
}
