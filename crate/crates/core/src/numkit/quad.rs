//! Exact elements `a + b*sqrt(d)` of a quadratic field (or of Q when `b = 0`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Interval;
use super::rat::format_rat;

/// `a + b*sqrt(d)`. `d` is a squarefree integer different from 1, or 0 for
/// a plain rational. Rational values are always stored with `b = 0, d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

/// Split `n = s^2 * f` with `f` squarefree (sign kept in `f`).
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let mut m = n.abs();
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &p;
        }
        if e % 2 == 1 {
            f *= &p;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    f *= m;
    if n.is_negative() {
        f = -f;
    }
    (s, f)
}

impl Quad {
    pub fn rational(q: BigRational) -> Quad {
        Quad {
            a: q,
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn from_int(n: i64) -> Quad {
        Quad::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Quad {
        Quad::from_int(0)
    }

    pub fn one() -> Quad {
        Quad::from_int(1)
    }

    /// `a + b*sqrt(n)` for an arbitrary integer `n`; square factors of `n` are
    /// absorbed into `b`.
    pub fn new(a: BigRational, b: BigRational, n: &BigInt) -> Quad {
        if b.is_zero() || n.is_zero() {
            return Quad::rational(a);
        }
        let (s, f) = squarefree_split(n);
        let b = b * BigRational::from_integer(s);
        if f.is_one() {
            return Quad::rational(a + b);
        }
        Quad { a, b, d: f }
    }

    /// `sqrt(n)`.
    pub fn sqrt_int(n: &BigInt) -> Quad {
        Quad::new(BigRational::zero(), BigRational::one(), n)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn normalized(self) -> Quad {
        if self.b.is_zero() {
            Quad::rational(self.a)
        } else {
            self
        }
    }

    fn common_d(&self, other: &Quad) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => BigInt::zero(),
            (false, true) => self.d.clone(),
            (true, false) => other.d.clone(),
            (false, false) => {
                assert_eq!(self.d, other.d, "mixing different quadratic fields");
                self.d.clone()
            }
        }
    }

    pub fn conj(&self) -> Quad {
        Quad {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
        .normalized()
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn inv(&self) -> Quad {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm();
        Quad {
            a: &self.a / &n,
            b: -&self.b / &n,
            d: self.d.clone(),
        }
        .normalized()
    }

    /// Exact sign for real fields (`d > 0` or rational).
    pub fn signum(&self) -> i32 {
        assert!(self.is_rational() || self.d.is_positive(), "sign in a complex field");
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // Opposite signs: compare a^2 with d b^2.
        let a2 = &self.a * &self.a;
        let db2 = BigRational::from_integer(self.d.clone()) * &self.b * &self.b;
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Quad {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Quad {
        let mut acc = Quad::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Real enclosure (real fields only).
    pub fn to_interval(&self, prec: u32) -> Interval {
        let wp = prec + 16;
        let a = Interval::from_rational(&self.a, wp);
        if self.is_rational() {
            return a.with_precision(prec);
        }
        let s = Interval::from_bigint(&self.d, wp).sqrt();
        let b = Interval::from_rational(&self.b, wp);
        (&a + &(&b * &s)).with_precision(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(64).to_f64()
    }

    /// Minimal polynomial over Z, primitive with positive leading
    /// coefficient, constant term first.
    pub fn minimal_polynomial(&self) -> Vec<BigInt> {
        if self.is_rational() {
            let p = self.a.numer().clone();
            let q = self.a.denom().clone();
            return vec![-p, q];
        }
        // x^2 - trace x + norm, cleared of denominators.
        let t = self.trace();
        let n = self.norm();
        let l = t.denom().lcm(n.denom());
        let c2 = l.clone();
        let c1 = -(t * BigRational::from_integer(l.clone())).to_integer();
        let c0 = (n * BigRational::from_integer(l)).to_integer();
        let g = c2.gcd(&c1).gcd(&c0);
        vec![c0 / &g, c1 / &g, c2 / &g]
    }
}

fn sgn(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl Ord for Quad {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn add(self, other: &Quad) -> Quad {
        let d = self.common_d(other);
        Quad {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        }
        .normalized()
    }
}

impl<'a> Sub<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn sub(self, other: &Quad) -> Quad {
        let d = self.common_d(other);
        Quad {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d,
        }
        .normalized()
    }
}

impl<'a> Mul<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn mul(self, other: &Quad) -> Quad {
        let d = self.common_d(other);
        let dq = BigRational::from_integer(d.clone());
        Quad {
            a: &self.a * &other.a + dq * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        }
        .normalized()
    }
}

impl<'a> Div<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn div(self, other: &Quad) -> Quad {
        self * &other.inv()
    }
}

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Quad> for Quad {
            type Output = Quad;
            fn $m(self, other: Quad) -> Quad {
                (&self).$m(&other)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl fmt::Display for Quad {
    /// Printed as `(a+b*sqrt(d))/c` with integers `a, b, c`, e.g.
    /// `(1+sqrt(5))/2`, `sqrt(5)/5`, `2-sqrt(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rat(&self.a));
        }
        let c = self.a.denom().lcm(self.b.denom());
        let cq = BigRational::from_integer(c.clone());
        let an = (&self.a * &cq).to_integer();
        let bn = (&self.b * &cq).to_integer();
        let rad = if bn.abs().is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", bn.abs(), self.d)
        };
        let num = if an.is_zero() {
            if bn.is_negative() {
                format!("-{rad}")
            } else {
                rad
            }
        } else if bn.is_negative() {
            format!("{an}-{rad}")
        } else {
            format!("{an}+{rad}")
        };
        if c.is_one() {
            write!(f, "{num}")
        } else if an.is_zero() {
            write!(f, "{num}/{c}")
        } else {
            write!(f, "({num})/{c}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn phi() -> Quad {
        Quad::new(q(1, 2), q(1, 2), &BigInt::from(5))
    }

    #[test]
    fn golden_ratio_arithmetic() {
        let p = phi();
        // phi^2 = phi + 1
        assert_eq!(&p * &p, &p + &Quad::one());
        assert_eq!(p.norm(), q(-1, 1));
        assert_eq!(p.to_string(), "(1+sqrt(5))/2");
        assert_eq!(p.minimal_polynomial(), vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn square_factors_are_absorbed() {
        let s = Quad::sqrt_int(&BigInt::from(20));
        assert_eq!(s.d, BigInt::from(5));
        assert_eq!(s.b, q(2, 1));
        assert!(Quad::sqrt_int(&BigInt::from(9)).is_rational());
    }

    #[test]
    fn exact_signs() {
        let s5 = Quad::sqrt_int(&BigInt::from(5));
        assert_eq!((&s5 - &Quad::from_int(2)).signum(), 1);
        assert_eq!((&s5 - &Quad::from_int(3)).signum(), -1);
        assert!(phi() > Quad::from_int(1));
        assert_eq!((&Quad::from_int(0) - &s5).to_string(), "-sqrt(5)");
        assert_eq!(s5.inv().to_string(), "sqrt(5)/5");
    }

    #[test]
    fn enclosure_matches_value() {
        let p = phi();
        assert!((p.to_f64() - 1.618033988749895).abs() < 1e-15);
        assert!(p.to_interval(128).width().to_f64() < 1e-35);
    }
}
