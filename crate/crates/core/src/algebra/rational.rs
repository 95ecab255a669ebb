//! Helpers on arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of an integer, if it is a perfect square.
pub fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Splits an integer as `n = g^2 * core`, with `core` square-free (sign kept in `core`).
///
/// Trial division runs up to 2^20; a cofactor left above that is tested only
/// for being a perfect square.
pub fn squarefree_int(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut g = BigInt::one();
    let mut core = BigInt::one();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            g *= bp.pow(e / 2);
            if e % 2 == 1 {
                core *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        match int_sqrt(&rest) {
            Some(r) => g *= r,
            None => core *= rest,
        }
    }
    (g, core * sign)
}

/// Splits a rational as `q = f^2 * core` with `f > 0` rational and `core` a square-free integer.
pub fn squarefree(q: &Rational) -> (Rational, BigInt) {
    let (g, core) = squarefree_int(&(q.numer() * q.denom()));
    (Rational::new(g, q.denom().clone()), core)
}

pub fn lcm_denoms<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub mod serde_rational {
    //! `serde(with = ...)` adapter writing rationals as `"p/q"` strings.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_parts() {
        let (g, c) = squarefree_int(&BigInt::from(72));
        assert_eq!((g, c), (BigInt::from(6), BigInt::from(2)));
        let (g, c) = squarefree_int(&BigInt::from(-45));
        assert_eq!((g, c), (BigInt::from(3), BigInt::from(-5)));
        let (f, c) = squarefree(&rat(15, 16));
        assert_eq!(f, rat(1, 4));
        assert_eq!(c, BigInt::from(15));
        let (f, c) = squarefree(&rat(1, 2));
        assert_eq!(f, rat(1, 2));
        assert_eq!(c, BigInt::from(2));
    }

    #[test]
    fn large_square_cofactor() {
        // 1048583 is prime and above the trial-division limit.
        let p = BigInt::from(1_048_583u64);
        let (g, c) = squarefree_int(&(&p * &p * 3));
        assert_eq!(g, p);
        assert_eq!(c, BigInt::from(3));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(format_rational(&int(7)), "7/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
    }
}
