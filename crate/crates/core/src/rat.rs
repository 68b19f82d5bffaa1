//! The exact scalar type and the small number-theoretic helpers built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn from_usize(n: usize) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `base^exp`, with `0^0 = 1`.
pub fn pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Row `n` of Pascal's triangle, built by the additive recurrence.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: usize) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Exact `"p/q"` rendering; integers keep the `/1`.
pub fn to_exact_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `"p/q"` or `"p"`. Decimal points are rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Decimal rendering with 12 significant digits, following the layout rules
/// of C's `%.12g` (fixed notation for exponents in [-4, 12), scientific
/// otherwise, trailing zeros removed). Rounding is half away from zero and
/// computed exactly.
pub fn approx_string(r: &Rat) -> String {
    const DIGITS: u32 = 12;
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);

    let mut exp = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow10 = |e: i64| -> Rat {
        if e >= 0 {
            Rat::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rat::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    while a >= pow10(exp + 1) {
        exp += 1;
    }
    while a < pow10(exp) {
        exp -= 1;
    }

    let scaled = &a * pow10(DIGITS as i64 - 1 - exp);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut mantissa = q;
    if rem * BigInt::from(2) >= *scaled.denom() {
        mantissa += 1;
    }
    if mantissa == num_traits::pow(ten.clone(), DIGITS as usize) {
        mantissa /= &ten;
        exp += 1;
    }
    let digits = mantissa.to_string();
    let sign = if negative { "-" } else { "" };

    if exp < -4 || exp >= DIGITS as i64 {
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        let esign = if exp < 0 { '-' } else { '+' };
        let mantissa = if tail.is_empty() {
            head.to_string()
        } else {
            format!("{head}.{tail}")
        };
        format!("{sign}{mantissa}e{esign}{:02}", exp.abs())
    } else if exp >= 0 {
        let (int_part, frac) = digits.split_at(exp as usize + 1);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        let frac = format!("{zeros}{digits}");
        format!("{sign}0.{}", frac.trim_end_matches('0'))
    }
}

/// Serde adapter for a single rational stored as `"p/q"`.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_exact_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals stored as `["p/q", ...]`.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_exact_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
