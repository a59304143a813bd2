//! Heights of rational and real quadratic numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Interval;
use super::elementary::ln;
use super::quad::Quad;

/// A rational or real quadratic number together with its heights.
///
/// `h` is the naive height: the largest absolute coefficient of the primitive
/// minimal polynomial over Z. The multiplicative Weil height is
/// `M(alpha)^(1/deg)`, where `M` is the Mahler measure.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicScalar {
    pub value: Quad,
    /// Constant term first.
    pub minimal_polynomial: Vec<BigInt>,
    pub h: BigInt,
    pub mahler: Quad,
}

impl AlgebraicScalar {
    pub fn new(value: Quad) -> Self {
        assert!(
            value.is_rational() || value.d.is_positive(),
            "heights are implemented for real fields only"
        );
        let minimal_polynomial = value.minimal_polynomial();
        let h = minimal_polynomial.iter().map(|c| c.abs()).max().unwrap();
        let lead = Quad::rational(BigRational::from_integer(
            minimal_polynomial.last().unwrap().clone(),
        ));
        let one = Quad::one();
        let mut mahler = lead;
        let conjugates: Vec<Quad> = if value.is_rational() {
            vec![value.clone()]
        } else {
            vec![value.clone(), value.conj()]
        };
        for a in conjugates {
            let m = a.abs();
            if m > one {
                mahler = &mahler * &m;
            }
        }
        AlgebraicScalar { value, minimal_polynomial, h, mahler }
    }

    pub fn rational(q: BigRational) -> Self {
        AlgebraicScalar::new(Quad::rational(q))
    }

    pub fn degree(&self) -> u32 {
        self.minimal_polynomial.len() as u32 - 1
    }

    /// The multiplicative height when it is again rational or quadratic.
    pub fn h_mult_exact(&self) -> Option<Quad> {
        if self.degree() == 1 {
            return Some(self.mahler.clone());
        }
        let m = self.mahler.as_rational()?;
        // sqrt(p/q) = sqrt(p*q)/q
        Some(Quad::new(
            BigRational::zero(),
            BigRational::new(BigInt::one(), m.denom().clone()),
            &(m.numer() * m.denom()),
        ))
    }

    pub fn h_mult(&self, prec: u32) -> Interval {
        let m = self.mahler.to_interval(prec + 8);
        let h = if self.degree() == 1 { m } else { m.sqrt() };
        h.with_precision(prec)
    }

    /// Logarithmic Weil height `log M / deg`.
    pub fn log_h_mult(&self, prec: u32) -> Interval {
        let lm = ln(&self.mahler.to_interval(prec + 8)).max_zero();
        lm.div_int(self.degree() as i64).with_precision(prec)
    }

    /// `H_mult` as text: exact when possible, otherwise `sqrt(M)`.
    pub fn h_mult_string(&self) -> String {
        match self.h_mult_exact() {
            Some(q) => q.to_string(),
            None => format!("sqrt({})", self.mahler),
        }
    }

    /// Exact check of `H <= (2 * H_mult)^deg`.
    pub fn naive_bound_holds(&self) -> bool {
        let bound = &self.mahler * &Quad::from_int(1 << self.degree());
        Quad::rational(BigRational::from_integer(self.h.clone())) <= bound
    }
}
