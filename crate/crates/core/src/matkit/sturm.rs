//! Real root isolation with Sturm sequences and exact dyadic bisection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::is_squarefree;
use super::poly::{IntPoly, Poly};
use crate::error::{MonoError, Result};
use crate::numkit::{Dyadic, Interval};

/// Integer multiple of `p` by a positive rational, primitive up to sign.
fn primitive_keep_sign(p: &Poly<BigRational>) -> IntPoly {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let lq = BigRational::from_integer(l);
    let ints: Vec<BigInt> = p.coeffs().iter().map(|x| (x * &lq).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return IntPoly::zero();
    }
    IntPoly::new(ints.into_iter().map(|x| x / &g).collect())
}

pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> Self {
        let mut seq = vec![p.clone()];
        if p.deg() == 0 {
            return SturmSequence { seq };
        }
        let mut a: Poly<BigRational> = p.to_field();
        let mut b = a.derivative();
        seq.push(primitive_keep_sign(&b));
        loop {
            let r = a.rem(&b);
            if r.is_zero() {
                break;
            }
            let next = Poly::constant(BigRational::from_integer(BigInt::from(-1))).mul(&r);
            let int_next = primitive_keep_sign(&next);
            seq.push(int_next.clone());
            a = b;
            b = int_next.to_field();
        }
        SturmSequence { seq }
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Dyadic) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at_dyadic(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = if p.lc().is_positive() { 1 } else { -1 };
            if positive || p.deg() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn total(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Distinct roots in the half-open interval `(a, b]`, for `a <= b`.
    pub fn count_half_open(&self, a: &Dyadic, b: &Dyadic) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &Dyadic, b: &Dyadic) -> usize {
        let at_a = usize::from(self.seq[0].sign_at_dyadic(a) == 0);
        at_a + self.count_half_open(a, b)
    }
}

/// `2^k` strictly above the modulus of every root (Cauchy bound).
pub fn root_bound_exponent(p: &IntPoly) -> i64 {
    let lc_bits = p.lc().bits() as i64;
    let max_bits = p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0) as i64;
    (max_bits - lc_bits + 2).max(1)
}

fn split_point(p: &IntPoly, a: &Dyadic, b: &Dyadic) -> Dyadic {
    let w = b - a;
    let order = [32i64, 31, 33, 30, 34, 29, 35, 28, 36, 27, 37, 26, 38, 25, 39, 24, 40, 23, 41, 22, 42];
    for t in order {
        let m = a + &(&w * &Dyadic::new(BigInt::from(t), -6));
        if p.sign_at_dyadic(&m) != 0 {
            return m;
        }
    }
    let mut t = 1;
    loop {
        let m = a + &(&w * &Dyadic::new(BigInt::from(t), -16));
        if p.sign_at_dyadic(&m) != 0 {
            return m;
        }
        t += 2;
    }
}

/// Isolating intervals for the real roots of a squarefree polynomial, in
/// increasing order, each of width at most `2^-bits`. Exact roots found by
/// bisection come back as point intervals.
pub fn real_roots(p: &IntPoly, bits: u32) -> Result<Vec<Interval>> {
    if p.is_zero() {
        return Err(MonoError::domain("real roots of the zero polynomial"));
    }
    if !is_squarefree(p) {
        return Err(MonoError::domain(format!("{p} is not squarefree")));
    }
    if p.deg() == 0 {
        return Ok(Vec::new());
    }
    let prec = (bits + 64).max(128);
    let sturm = SturmSequence::new(p);
    let k = root_bound_exponent(p);
    let m = Dyadic::new(BigInt::one(), k);
    let mut stack = vec![(-&m, m.clone())];
    let mut isolated: Vec<(Dyadic, Dyadic)> = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let c = sturm.count_half_open(&a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 {
            isolated.push((a, b));
            continue;
        }
        let mid = split_point(p, &a, &b);
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    let eps = Dyadic::new(BigInt::one(), -(bits as i64));
    let mut out = Vec::new();
    for (mut a, mut b) in isolated {
        let sa = p.sign_at_dyadic(&a);
        let mut exact = None;
        while &b - &a > eps {
            let mid = (&a + &b).mul_pow2(-1);
            let sm = p.sign_at_dyadic(&mid);
            if sm == 0 {
                exact = Some(mid);
                break;
            }
            if sm == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(match exact {
            Some(x) => Interval::new(x.clone(), x, prec),
            None => Interval::new(a, b, prec),
        });
    }
    out.sort_by(|x, y| x.lo().cmp(y.lo()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn sqrt_two() {
        let r = real_roots(&p(&[-2, 0, 1]), 60).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[1].to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!((r[0].to_f64() + 2f64.sqrt()).abs() < 1e-15);
        assert!(r[0].width().to_f64() <= 2f64.powi(-60));
    }

    #[test]
    fn no_real_roots() {
        assert!(real_roots(&p(&[1, 0, 1]), 40).unwrap().is_empty());
    }

    #[test]
    fn cubic_with_three_roots() {
        let f = p(&[1, 3, -4, 1]);
        let r = real_roots(&f, 50).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(SturmSequence::new(&f).total(), 3);
        for iv in &r {
            let x = iv.to_f64();
            assert!((x * x * x - 4.0 * x * x + 3.0 * x + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dyadic_roots_are_enclosed() {
        let r = real_roots(&p(&[0, -1, 0, 4]), 40).unwrap();
        assert_eq!(r.len(), 3);
        for (iv, x) in r.iter().zip([-1i64, 0, 1]) {
            assert!(iv.contains(&Dyadic::new(BigInt::from(x), -1)));
        }
    }

    #[test]
    fn rejects_repeated_roots() {
        assert!(real_roots(&p(&[1, -2, 1]), 40).is_err());
    }

    #[test]
    fn closed_counts() {
        let s = SturmSequence::new(&p(&[-2, 0, 1]));
        let one = Dyadic::from_int(1);
        let two = Dyadic::from_int(2);
        assert_eq!(s.count_closed(&one, &two), 1);
        assert_eq!(s.count_closed(&-&two, &two), 2);
    }
}
