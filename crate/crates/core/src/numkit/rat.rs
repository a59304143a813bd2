//! Rationals: parsing and printing in the `p/q` syntax.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{MonoError, Result};

/// Reduced fraction with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

fn parse_int(s: &str) -> Result<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(MonoError::Parse(format!("not an integer: {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|e| MonoError::Parse(format!("{s:?}: {e}")))
}

/// Parse `"p"` or `"p/q"` (ASCII, no whitespace).
pub fn parse_rat(s: &str) -> Result<Rat> {
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            if q.starts_with(['-', '+']) {
                return Err(MonoError::Parse(format!("signed denominator in {s:?}")));
            }
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(MonoError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

pub fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
