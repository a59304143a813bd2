//! Positive reals far below floating-point range, stored as `-log x`.

use std::cmp::Ordering;

use super::dyadic::Interval;
use super::elementary::{ln, log10};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegLogScalar {
    neg_log: Interval,
}

impl NegLogScalar {
    /// `x = exp(-neg_log)`; `neg_log` must be certainly nonnegative.
    pub fn from_neg_log(neg_log: Interval) -> Self {
        assert!(neg_log.lo().signum() >= 0, "negative neg_log (value above 1)");
        NegLogScalar { neg_log }
    }

    /// From an enclosure of `x` itself, `0 < x <= 1`.
    pub fn from_value(x: &Interval) -> Self {
        NegLogScalar::from_neg_log(-ln(x))
    }

    pub fn neg_log(&self) -> &Interval {
        &self.neg_log
    }

    /// `log10(-log x)`; requires `x < 1`.
    pub fn log10_neg_log(&self) -> Interval {
        log10(&self.neg_log)
    }

    pub fn mul(&self, other: &NegLogScalar) -> NegLogScalar {
        NegLogScalar {
            neg_log: &self.neg_log + &other.neg_log,
        }
    }

    /// Ordering of the represented values when the enclosures decide it.
    pub fn certain_cmp(&self, other: &NegLogScalar) -> Option<Ordering> {
        self.neg_log.certain_cmp(&other.neg_log).map(Ordering::reverse)
    }

    /// Lower bound on `log(y) - log(x)` for a positive `y`: the margin by which
    /// `y` exceeds this scalar in log space.
    pub fn log_margin_below(&self, y: &Interval) -> Interval {
        &ln(y) + &self.neg_log
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_reversed() {
        let quarter = NegLogScalar::from_value(&Interval::from_rational(
            &crate::numkit::rat::rat(1, 4),
            128,
        ));
        let half = NegLogScalar::from_value(&Interval::from_rational(
            &crate::numkit::rat::rat(1, 2),
            128,
        ));
        assert_eq!(quarter.certain_cmp(&half), Some(Ordering::Less));
        let eighth = quarter.mul(&half);
        assert!((eighth.neg_log().to_f64() - 8f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn astronomically_small_values() {
        let c = NegLogScalar::from_neg_log(Interval::from_int(10, 128).pow_u(40));
        assert!((c.log10_neg_log().to_f64() - 40.0).abs() < 1e-12);
        let y = Interval::from_int(1, 128);
        assert!(c.log_margin_below(&y).is_positive());
    }
}
