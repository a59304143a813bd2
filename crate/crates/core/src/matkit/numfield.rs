//! Elements of a number field `Q[x]/(f)`, represented by reduced polynomials
//! in the generator.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;
use super::poly::{IntPoly, Poly};
use crate::numkit::{Interval, Quad};

#[derive(Clone, Debug)]
pub struct NfElem {
    c: Poly<BigRational>,
    /// `None` only for constants created without context.
    modulus: Option<Arc<Poly<BigRational>>>,
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl NfElem {
    /// The generator `x` of `Q[x]/(f)`; `f` must be irreducible.
    pub fn generator(f: &IntPoly) -> NfElem {
        let m: Poly<BigRational> = f.to_field::<BigRational>().monic();
        let modulus = Some(Arc::new(m));
        NfElem { c: Poly::x(), modulus }.reduced()
    }

    pub fn rational(q: BigRational) -> NfElem {
        NfElem { c: Poly::constant(q), modulus: None }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        self.c.coeffs()
    }

    fn reduced(mut self) -> NfElem {
        if let Some(m) = &self.modulus {
            if self.c.deg() >= m.deg() && !self.c.is_zero() {
                self.c = self.c.rem(m);
            }
        }
        self
    }

    fn join(&self, o: &NfElem) -> Option<Arc<Poly<BigRational>>> {
        self.modulus.clone().or_else(|| o.modulus.clone())
    }

    /// Value at a real root given exactly in a quadratic field.
    pub fn eval_quad(&self, root: &Quad) -> Quad {
        let mut acc = Quad::zero();
        for c in self.c.coeffs().iter().rev() {
            acc = &(&acc * root) + &Quad::rational(c.clone());
        }
        acc
    }

    /// Enclosure of the value at a real root enclosed by `root`.
    pub fn eval_interval(&self, root: &Interval) -> Interval {
        let prec = root.precision();
        let mut acc = Interval::zero(prec);
        for c in self.c.coeffs().iter().rev() {
            acc = &(&acc * root) + &Interval::from_rational(c, prec);
        }
        acc
    }
}

impl Field for NfElem {
    fn zero_elem() -> Self {
        NfElem::rational(BigRational::zero())
    }
    fn one_elem() -> Self {
        NfElem::rational(BigRational::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.c.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        NfElem { c: self.c.add(&o.c), modulus: self.join(o) }
    }
    fn sub(&self, o: &Self) -> Self {
        NfElem { c: self.c.sub(&o.c), modulus: self.join(o) }
    }
    fn mul(&self, o: &Self) -> Self {
        NfElem { c: self.c.mul(&o.c), modulus: self.join(o) }.reduced()
    }
    fn neg(&self) -> Self {
        NfElem { c: self.c.scale(&BigRational::from_integer(BigInt::from(-1))), modulus: self.modulus.clone() }
    }
    fn inv(&self) -> Self {
        assert!(!self.c.is_zero(), "inverse of zero");
        if self.c.deg() == 0 {
            let q = self.c.coeff(0).recip();
            return NfElem { c: Poly::constant(q), modulus: self.modulus.clone() };
        }
        let m = self.modulus.as_ref().expect("nonconstant element without modulus");
        // s*c + t*m = 1 since m is irreducible and does not divide c
        let (g, s, _) = self.c.xgcd(m);
        debug_assert_eq!(g.deg(), 0);
        let s = s.scale(&g.coeff(0).recip());
        NfElem { c: s, modulus: self.modulus.clone() }.reduced()
    }
    fn from_bigint(n: &BigInt) -> Self {
        NfElem::rational(BigRational::from_integer(n.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_in_cubic_field() {
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let x = NfElem::generator(&f);
        let x3 = x.mul(&x).mul(&x);
        assert_eq!(x3, NfElem::from_i64(2));
        let y = x.add(&NfElem::one_elem());
        assert!(y.mul(&y.inv()).is_one());
    }
}
