//! Rational scalars and the helpers used everywhere else.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// Parse `p` or `p/q`. Decimal points and exponents are rejected on purpose.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::Parse(s.to_string());
    let parse_int = |x: &str| -> Result<BigInt> {
        let x = x.trim();
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(t)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(parse_int(p)?, q))
        }
    }
}

/// Canonical "num/den" string; integers keep the "/1" so every coefficient has one shape.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// `Some(k)` when `r` is the integer `-k` with `k >= 0`.
pub fn nonpositive_integer(r: &Rat) -> Option<u64> {
    if r.is_integer() && !r.is_positive() {
        (-r.to_integer()).to_u64()
    } else {
        None
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial_rat(n: u64) -> Rat {
    Rat::from_integer(factorial(n))
}

pub fn binom_int(n: u64, k: u64) -> BigInt {
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

pub fn pow_rat(base: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

pub fn sign_of(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// 2-adic valuation of a nonzero integer.
pub fn valuation2(n: &BigInt) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    n.magnitude().trailing_zeros()
}

pub fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub(crate) mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(parse_rat(" 6/-4 ").unwrap(), rat(-3, 2));
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1e3").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn canonical_string() {
        assert_eq!(fmt_rat(&rat(-6, 8)), "-3/4");
        assert_eq!(fmt_rat(&int(2)), "2/1");
    }

    #[test]
    fn nonpositive_detection() {
        assert_eq!(nonpositive_integer(&int(0)), Some(0));
        assert_eq!(nonpositive_integer(&int(-3)), Some(3));
        assert_eq!(nonpositive_integer(&int(2)), None);
        assert_eq!(nonpositive_integer(&rat(-1, 2)), None);
    }

    #[test]
    fn integer_helpers() {
        assert_eq!(binom_int(10, 3), BigInt::from(120));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(valuation2(&BigInt::from(48)), Some(4));
        assert_eq!(valuation2(&BigInt::from(-3)), Some(0));
    }
}
