//! Exact rational scalars.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `"n"` or `"p/q"`.
pub fn parse_scalar(s: &str) -> Result<Q> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::parse("", format!("empty scalar {s:?}")));
    }
    let v = Q::from_str(t).map_err(|_| Error::parse("", format!("malformed scalar {s:?}")))?;
    Ok(v)
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_scalar(v: &Q) -> String {
    v.to_string()
}

/// Integer power, negative exponents invert. `0^n` for negative `n` is a caller error.
pub fn pow(base: &Q, exp: i64) -> Q {
    if exp == 0 {
        return one();
    }
    let mut acc = one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

pub fn is_pm_one(v: &Q) -> bool {
    v.is_integer() && v.abs().is_one()
}

pub fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(one(), |acc, k| acc * q(k))
}

/// `(-1)^n`
pub fn sign_power(n: usize) -> Q {
    if n % 2 == 0 {
        one()
    } else {
        -one()
    }
}
