//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n`, `-n` or `n/d`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = || Error::InvalidInput(format!("not a rational number: `{text}`"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rat::new(num, den))
}

/// `n` or `n/d`, the inverse of [`parse_rat`].
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn int_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(n);
    (r.clone().pow(n) == *x).then_some(r)
}

/// Real `n`-th root of `r` when it is rational.
///
/// Odd roots of negative numbers are negative; even roots of negative
/// numbers do not exist.
pub fn rat_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    assert!(n > 0);
    if r.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return rat_nth_root(&-r, n).map(|x| -x);
    }
    let num = int_nth_root(r.numer(), n)?;
    let den = int_nth_root(r.denom(), n)?;
    Some(Rat::new(num, den))
}

/// Generalized binomial coefficient `binom(alpha, k)`.
pub fn binomial(alpha: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * (alpha - rat(i as i64)) / rat(i as i64 + 1);
    }
    acc
}

pub fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
