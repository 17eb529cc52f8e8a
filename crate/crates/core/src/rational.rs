//! Exact rational helpers shared by the algorithms, the oracle and the CLI.
//!
//! Every threshold comparison in this crate is done on [`BigRational`]
//! values. Parameters travel as `p/q` strings.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// `p/q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `p/q`, `p`, or `-p/q` (whitespace around the slash is allowed).
pub fn parse_rational(s: &str) -> Result<BigRational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| RationalParseError::BadInteger(num.to_string()))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| RationalParseError::BadInteger(den.to_string()))?;
    if den.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical `p/q` rendering (`p` when the denominator is one).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering truncated toward zero to `digits` fractional digits.
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    let mut out = String::new();
    if r.is_negative() {
        out.push('-');
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let (int_part, mut rem) = num.div_rem(&den);
    write!(out, "{int_part}").unwrap();
    if digits > 0 {
        out.push('.');
        let ten = BigInt::from(10u32);
        for _ in 0..digits {
            rem *= &ten;
            let (d, r2) = rem.div_rem(&den);
            write!(out, "{d}").unwrap();
            rem = r2;
        }
    }
    out
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest `k >= 0` with `base^k >= target`. Requires `base > 1`.
pub fn ceil_log(base: &BigRational, target: &BigRational) -> u32 {
    assert!(base > &BigRational::one(), "ceil_log needs base > 1");
    let mut k = 0u32;
    let mut acc = BigRational::one();
    while &acc < target {
        acc *= base;
        k += 1;
    }
    k
}

/// Smallest `k >= 0` with `2^k >= x`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Smallest rational of the form `z / 2^frac_bits` that is `>= value^(1/degree)`.
///
/// A float guess is refined with exact integer power comparisons, so the
/// result is exact: `z^degree >= value * 2^(frac_bits * degree)` and
/// `(z - 1)^degree < value * 2^(frac_bits * degree)`.
pub fn root_upper(value: u64, degree: u32, frac_bits: u32) -> BigRational {
    assert!(degree >= 1);
    let scale = BigUint::one() << (frac_bits as usize);
    let target = BigUint::from(value) * Pow::pow(&scale, degree);
    let guess = (value as f64).powf(1.0 / degree as f64) * (1u64 << frac_bits) as f64;
    let mut z = BigUint::from(guess.max(0.0).floor() as u64);
    let pow = |z: &BigUint| -> BigUint { Pow::pow(z, degree) };
    while pow(&z) < target {
        z += 1u32;
    }
    while !z.is_zero() && pow(&(&z - 1u32)) >= target {
        z -= 1u32;
    }
    BigRational::new(BigInt::from(z), BigInt::from(scale))
}

/// Serde adapter storing rationals as `p/q` strings.
pub mod serde_rational {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for optional rationals (`null` or a `p/q` string).
pub mod serde_rational_opt {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&super::format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| super::parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("9/10").unwrap(), ratio(9, 10));
        assert_eq!(parse_rational(" 2 / 4 ").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert!(matches!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator(_))
        ));
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 3), 5), "0.33333");
        assert_eq!(to_decimal(&ratio(9, 2), 2), "4.50");
        assert_eq!(to_decimal(&ratio(-1, 8), 3), "-0.125");
        assert_eq!(to_decimal(&int(2), 0), "2");
    }

    #[test]
    fn logs() {
        assert_eq!(ceil_log(&int(2), &int(1)), 0);
        assert_eq!(ceil_log(&int(2), &int(5)), 3);
        assert_eq!(ceil_log(&int(2), &int(8)), 3);
        assert_eq!(ceil_log(&ratio(3, 2), &int(2)), 2);
        assert_eq!(ceil_log2(0), 0);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
    }

    #[test]
    fn root_upper_is_tight() {
        for (value, degree) in [(3u64, 2u32), (3, 4), (2, 1), (16, 2), (17, 3), (1, 5)] {
            let r = root_upper(value, degree, 20);
            let step = ratio(1, 1 << 20);
            assert!(Pow::pow(&r, degree) >= int(value));
            let below = &r - &step;
            assert!(Pow::pow(&below, degree) < int(value));
        }
        assert_eq!(root_upper(16, 2, 20), int(4));
    }
}
