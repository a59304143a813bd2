//! Univariate polynomials: integer polynomials and dense polynomials over a
//! field. Coefficient vectors are stored constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use crate::numkit::Dyadic;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    /// `x - r`.
    pub fn linear(r: &BigInt) -> Self {
        IntPoly::new(vec![-r.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 here, check `is_zero`.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        IntPoly::new(self.c.iter().map(|x| x / &g).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient over Z if `d` divides `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.deg() < d.deg() {
            return None;
        }
        let mut r = self.c.clone();
        let dl = d.lc();
        let dd = d.deg();
        let mut q = vec![BigInt::zero(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] -= &qk * dj;
            }
            q[k] = qk;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        self.c
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.c
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, a| acc * x + BigRational::from_integer(a.clone()))
    }

    /// Sign of `p(x)` at a dyadic point, computed exactly.
    pub fn sign_at_dyadic(&self, x: &Dyadic) -> i32 {
        let mut acc = Dyadic::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + &Dyadic::from_bigint(a);
        }
        acc.signum()
    }

    pub fn to_field<F: Field>(&self) -> Poly<F> {
        Poly::new(self.c.iter().map(F::from_bigint).collect())
    }

    /// Primitive integer multiple of a rational polynomial.
    pub fn from_rational(p: &Poly<BigRational>) -> IntPoly {
        let l = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let lq = BigRational::from_integer(l);
        IntPoly::new(p.coeffs().iter().map(|x| (x * &lq).to_integer()).collect()).primitive()
    }

    /// Euclidean norm squared of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.c.iter().map(|x| x * x).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.c.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl fmt::Display for IntPoly {
    /// `x^2-x-1` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Dense polynomial over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    c: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero_elem()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![F::one_elem()] }
    }

    pub fn x() -> Self {
        Poly::new(vec![F::zero_elem(), F::one_elem()])
    }

    pub fn constant(a: F) -> Self {
        Poly::new(vec![a])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::zero_elem)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> F {
        self.c.last().cloned().unwrap_or_else(F::zero_elem)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero_elem(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &F) -> Self {
        Poly::new(self.c.iter().map(|x| x.mul(k)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dd = d.deg();
        let inv = d.lc().inv();
        let mut q = vec![F::zero_elem(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero_elem() {
                continue;
            }
            let qk = top.mul(&inv);
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].sub(&qk.mul(dj));
            }
            q[k] = qk;
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x.mul(&F::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.c
            .iter()
            .rev()
            .fold(F::zero_elem(), |acc, a| acc.mul(x).add(a))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}
