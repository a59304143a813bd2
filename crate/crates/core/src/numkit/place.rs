//! Places of Q and logarithms of absolute values.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{MonoError, Result};

use super::dyadic::Interval;
use super::elementary::{ln_biguint, ln_rational};
use super::logform::LogForm;
use super::primes::{factor_rational, is_prime};
use super::quad::Quad;
use super::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(BigUint),
    Archimedean,
}

impl Place {
    pub fn finite(p: BigUint) -> Result<Place> {
        if !is_prime(&p) {
            return Err(MonoError::domain(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Archimedean => write!(f, "inf"),
        }
    }
}

/// `log ||x||_v` as an exact form: `-v_p(x) log p` or `log |x|`.
pub fn log_abs_form(x: &Rat, v: &Place) -> Result<LogForm> {
    let vals = factor_rational(x)?;
    Ok(match v {
        Place::Finite(p) => match vals.get(p) {
            Some(&e) => LogForm::term(p.clone(), Quad::from_int(-e)),
            None => LogForm::zero(),
        },
        Place::Archimedean => LogForm::from_valuations(&vals),
    })
}

/// Enclosure of `log ||x||_v` at `prec` bits.
pub fn log_abs_at_place(x: &Rat, v: &Place, prec: u32) -> Result<Interval> {
    if x.numer() == &num_bigint::BigInt::from(0) {
        return Err(MonoError::domain("log of zero"));
    }
    match v {
        Place::Archimedean => Ok(ln_rational(x, prec)),
        Place::Finite(p) => {
            let e = super::primes::factor_rational(x)?.get(p).copied().unwrap_or(0);
            Ok(ln_biguint(p, prec).mul_int(-e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rat::rat;

    fn fin(p: u32) -> Place {
        Place::finite(BigUint::from(p)).unwrap()
    }

    #[test]
    fn spec_values() {
        let a = log_abs_at_place(&rat(2, 1), &fin(2), 128).unwrap();
        assert!((a.to_f64() + std::f64::consts::LN_2).abs() < 1e-15);
        let b = log_abs_at_place(&rat(3, 1), &Place::Archimedean, 128).unwrap();
        assert!((b.to_f64() - 1.0986122886681098).abs() < 1e-15);
        let c = log_abs_at_place(&rat(1, 3), &fin(3), 128).unwrap();
        assert!((c.to_f64() - 1.0986122886681098).abs() < 1e-15);
        assert!(log_abs_at_place(&rat(0, 1), &fin(3), 128).is_err());
    }

    #[test]
    fn composite_is_not_a_place() {
        assert!(Place::finite(BigUint::from(91u32)).is_err());
    }

    #[test]
    fn product_formula_exact() {
        let x = rat(-360, 77);
        let mut total = log_abs_form(&x, &Place::Archimedean).unwrap();
        for p in factor_rational(&x).unwrap().keys() {
            total = total.add(&log_abs_form(&x, &Place::Finite(p.clone())).unwrap());
        }
        assert!(total.is_zero());
    }
}
