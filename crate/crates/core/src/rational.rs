//! Exact rational helpers: `p/q` parsing and decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 12;

/// Parse `"p/q"` or an integer `"p"`. Decimal fractions are rejected.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

// round(p/q) half away from zero, for p ≥ 0, q > 0
fn round_div(p: &BigInt, q: &BigInt) -> BigInt {
    let twice: BigInt = p * 2 + q;
    twice.div_floor(&(q * 2))
}

/// Decimal rendering with `sig` significant digits, correctly rounded from the
/// exact value. Trailing zeros after the point are dropped.
pub fn to_decimal(x: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let (p, q) = (a.numer().clone(), a.denom().clone());

    // 10^e ≤ a < 10^(e+1)
    let mut e = p.to_string().len() as i64 - q.to_string().len() as i64;
    let ge_pow = |e: i64| -> bool {
        if e >= 0 {
            p >= &q * pow10(e as u32)
        } else {
            &p * pow10((-e) as u32) >= q
        }
    };
    while !ge_pow(e) {
        e -= 1;
    }
    while ge_pow(e + 1) {
        e += 1;
    }

    let mut k = sig as i64 - 1 - e;
    let scaled = |k: i64| -> BigInt {
        if k >= 0 {
            round_div(&(&p * pow10(k as u32)), &q)
        } else {
            round_div(&p, &(&q * pow10((-k) as u32)))
        }
    };
    let mut digits = scaled(k);
    if digits.to_string().len() > sig {
        k -= 1;
        digits = scaled(k);
    }

    let s = digits.to_string();
    let mut out = if k <= 0 {
        format!("{s}{}", "0".repeat((-k) as usize))
    } else {
        let k = k as usize;
        if k >= s.len() {
            format!("0.{}{s}", "0".repeat(k - s.len()))
        } else {
            format!("{}.{}", &s[..s.len() - k], &s[s.len() - k..])
        }
    };
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    if neg {
        out.insert(0, '-');
    }
    out
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: scale down through the bit lengths.
        let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
        let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub mod serde_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational(" 2/6 ").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("5").unwrap(), ratio(5, 1));
        assert!(parse_rational("0.333").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&ratio(2, 6)), "1/3");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal(&ratio(1, 2), 12), "0.5");
        assert_eq!(to_decimal(&ratio(1, 1), 12), "1");
        assert_eq!(to_decimal(&ratio(0, 1), 12), "0");
        assert_eq!(to_decimal(&ratio(-1, 6), 3), "-0.167");
        assert_eq!(to_decimal(&ratio(1, 1000), 2), "0.001");
        assert_eq!(to_decimal(&ratio(123456, 1), 3), "123000");
        assert_eq!(to_decimal(&ratio(9999, 10000), 2), "1");
        assert_eq!(to_decimal(&ratio(1, 7), 1), "0.1");
    }
}
