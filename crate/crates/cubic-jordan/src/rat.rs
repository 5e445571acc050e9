//! Exact rational scalars and their text form.
//!
//! Rationals are written `p/q` (or just `p` for integers) with `q > 0` and
//! `gcd(p, q) = 1`; [`parse_rat`] accepts that grammar and nothing else, and
//! never panics on malformed input.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

/// The scalar type used throughout the crate. `num`'s `BigRational` keeps
/// values reduced (positive denominator, coprime parts) after every operation,
/// which is exactly the canonical form the text format expects.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in rational literal: {0:?}")]
    BadInt(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
    #[error("too many '/' in rational literal")]
    ExtraSlash,
}

/// Shorthand for an integer as a `Rat`.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on `d == 0`; intended for literals in code.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "rat(): zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn parse_int(s: &str) -> Result<BigInt, RatParseError> {
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    // Reject whitespace, '+' signs, leading garbage: only `-?[0-9]+`.
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RatParseError::BadInt(s.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RatParseError::BadInt(s.to_string()))
}

/// Parse `p` or `p/q`. The denominator may be negative in the input (the
/// result is normalised), but must be nonzero.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let mut parts = s.split('/');
    let num = parse_int(parts.next().ok_or(RatParseError::Empty)?)?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(d) => {
            if parts.next().is_some() {
                return Err(RatParseError::ExtraSlash);
            }
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(RatParseError::ZeroDenominator);
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise, `q > 0`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` is a square in `Q`; returns the non-negative square root.
pub fn sqrt_rat(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(Rat::new(num, den))
    } else {
        None
    }
}
