//! Exact linear forms `sum c_p log p` in logarithms of primes, with
//! coefficients in Q or a real quadratic field.
//!
//! Logarithms of distinct primes are linearly independent over the algebraic
//! numbers, so a form vanishes exactly when all its coefficients do, and the
//! sign of a nonzero form is found by refining its enclosure.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use super::dyadic::Interval;
use super::elementary::ln_biguint;
use super::quad::Quad;

const MAX_SIGN_PRECISION: u32 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LogForm {
    terms: BTreeMap<BigUint, Quad>,
}

impl LogForm {
    pub fn zero() -> Self {
        LogForm::default()
    }

    pub fn log_prime(p: BigUint) -> Self {
        LogForm::term(p, Quad::one())
    }

    pub fn term(p: BigUint, c: Quad) -> Self {
        let mut f = LogForm::zero();
        f.add_term(p, c);
        f
    }

    /// `log |x|` from valuations `v_p(x)`.
    pub fn from_valuations(vals: &BTreeMap<BigUint, i64>) -> Self {
        let mut f = LogForm::zero();
        for (p, &e) in vals {
            f.add_term(p.clone(), Quad::from_int(e));
        }
        f
    }

    pub fn add_term(&mut self, p: BigUint, c: Quad) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(Quad::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> &BTreeMap<BigUint, Quad> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LogForm) -> LogForm {
        let mut f = self.clone();
        for (p, c) in &other.terms {
            f.add_term(p.clone(), c.clone());
        }
        f
    }

    pub fn sub(&self, other: &LogForm) -> LogForm {
        self.add(&other.scale(&Quad::from_int(-1)))
    }

    pub fn neg(&self) -> LogForm {
        self.scale(&Quad::from_int(-1))
    }

    pub fn scale(&self, c: &Quad) -> LogForm {
        if c.is_zero() {
            return LogForm::zero();
        }
        LogForm {
            terms: self.terms.iter().map(|(p, k)| (p.clone(), k * c)).collect(),
        }
    }

    pub fn to_interval(&self, prec: u32) -> Interval {
        let wp = prec + 16;
        let mut acc = Interval::zero(wp);
        for (p, c) in &self.terms {
            acc = &acc + &(&c.to_interval(wp) * &ln_biguint(p, wp));
        }
        acc.with_precision(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(64).to_f64()
    }

    /// Exact sign.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let mut prec = 64;
        loop {
            let iv = self.to_interval(prec);
            if iv.is_positive() {
                return 1;
            }
            if iv.is_negative() {
                return -1;
            }
            prec *= 2;
            assert!(
                prec <= MAX_SIGN_PRECISION,
                "sign of a nonzero log form not resolved"
            );
        }
    }

    pub fn cmp_exact(&self, other: &LogForm) -> Ordering {
        self.sub(other).signum().cmp(&0)
    }

    pub fn max_exact(&self, other: &LogForm) -> LogForm {
        if self.cmp_exact(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// `max(0, self)`.
    pub fn max_zero(&self) -> LogForm {
        if self.signum() > 0 {
            self.clone()
        } else {
            LogForm::zero()
        }
    }
}

impl fmt::Display for LogForm {
    /// `2*log(2) - log(3)`, `((1+sqrt(5))/10)*log(2)`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            let neg = c.is_rational() && c.signum() < 0;
            let mag = if neg { -c } else { c.clone() };
            let body = if mag == Quad::one() {
                format!("log({p})")
            } else if mag.is_rational() {
                format!("{mag}*log({p})")
            } else {
                format!("({mag})*log({p})")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rat::rat;
    use num_bigint::BigInt;

    fn lp(p: u32) -> LogForm {
        LogForm::log_prime(BigUint::from(p))
    }

    #[test]
    fn exact_cancellation() {
        let f = lp(2).add(&lp(3)).sub(&lp(2));
        assert_eq!(f, lp(3));
        assert!(lp(5).sub(&lp(5)).is_zero());
    }

    #[test]
    fn signs_resolve() {
        // 5 log 2 - 3 log 3 = log(32/27) > 0
        let f = lp(2).scale(&Quad::from_int(5)).sub(&lp(3).scale(&Quad::from_int(3)));
        assert_eq!(f.signum(), 1);
        // 19 log 2 vs 12 log 3: 524288 < 531441
        let g = lp(2).scale(&Quad::from_int(19)).sub(&lp(3).scale(&Quad::from_int(12)));
        assert_eq!(g.signum(), -1);
    }

    #[test]
    fn quadratic_coefficients() {
        let phi = Quad::new(rat(1, 2), rat(1, 2), &BigInt::from(5));
        let f = lp(2).scale(&phi);
        assert!((f.to_f64() - 1.618033988749895 * std::f64::consts::LN_2).abs() < 1e-14);
        assert_eq!(f.to_string(), "((1+sqrt(5))/2)*log(2)");
        assert_eq!(lp(2).sub(&lp(3).scale(&Quad::from_int(2))).to_string(), "log(2) - 2*log(3)");
    }
}
