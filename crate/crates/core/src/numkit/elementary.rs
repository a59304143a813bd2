//! Enclosures of `ln`, `exp`, powers and roots.
//!
//! `ln` reduces to `2 atanh((z-1)/(z+1))` with `z` in `[3/4, 3/2]`; `exp`
//! halves the argument below `1/2`, sums the Taylor series with an explicit
//! tail bound and squares back.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::{Dyadic, Interval};

const GUARD: u32 = 32;

thread_local! {
    static LN_CACHE: RefCell<HashMap<(BigUint, u32), Interval>> = RefCell::new(HashMap::new());
}

/// `atanh(t)` for `|t| <= 1/3`.
fn atanh_small(t: &Interval, wp: u32) -> Interval {
    let t2 = t.square();
    let mut power = t.clone();
    let mut sum = Interval::zero(wp);
    let mut j: i64 = 0;
    let eps = Dyadic::new(BigInt::one(), -(wp as i64) - 2);
    loop {
        sum = &sum + &power.div_int(2 * j + 1);
        power = &power * &t2;
        j += 1;
        let mag = power.abs();
        if mag.hi() < &eps || power.is_point() && power.lo().is_zero() {
            // Remaining terms are bounded by |power| / (1 - t^2) <= 2 |power|.
            let b = mag.hi().mul_pow2(1);
            let tail = Interval::new(-&b, b, wp);
            return &sum + &tail;
        }
    }
}

/// Enclosure of `ln 2`.
pub fn ln2(prec: u32) -> Interval {
    ln_biguint(&BigUint::from(2u32), prec)
}

fn ln2_uncached(prec: u32) -> Interval {
    let wp = prec + GUARD;
    let third = Interval::from_rational(&BigRational::new(BigInt::one(), BigInt::from(3)), wp);
    atanh_small(&third, wp).mul_pow2(1).with_precision(prec)
}

fn ln_positive_dyadic(x: &Dyadic, prec: u32) -> Interval {
    assert!(x.signum() > 0, "logarithm of a nonpositive value");
    let wp = prec + GUARD;
    let mut k = x.magnitude_bits() - 1;
    let mut z = x.mul_pow2(-k);
    if z > Dyadic::new(BigInt::from(3), -1) {
        k += 1;
        z = z.mul_pow2(-1);
    }
    let zr = z.to_rational();
    let t = (&zr - BigRational::one()) / (&zr + BigRational::one());
    let at = if t.is_zero() {
        Interval::zero(wp)
    } else {
        atanh_small(&Interval::from_rational(&t, wp), wp).mul_pow2(1)
    };
    let l2 = if k == 0 {
        Interval::zero(wp)
    } else {
        ln2(wp).mul_int(k)
    };
    (&l2 + &at).with_precision(prec)
}

/// Enclosure of `ln x` for an interval of positive values.
pub fn ln(x: &Interval) -> Interval {
    assert!(x.is_positive(), "logarithm of an interval not bounded away from zero");
    let prec = x.precision();
    if x.is_point() {
        return ln_positive_dyadic(x.lo(), prec);
    }
    let lo = ln_positive_dyadic(x.lo(), prec);
    let hi = ln_positive_dyadic(x.hi(), prec);
    Interval::new(lo.lo().clone(), hi.hi().clone(), prec)
}

/// Enclosure of `ln n` for a positive integer, cached per thread.
pub fn ln_biguint(n: &BigUint, prec: u32) -> Interval {
    assert!(!n.is_zero(), "logarithm of zero");
    if n.is_one() {
        return Interval::zero(prec);
    }
    let key = (n.clone(), prec);
    if let Some(v) = LN_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let v = if *n == BigUint::from(2u32) {
        ln2_uncached(prec)
    } else {
        let wp = prec + GUARD;
        ln(&Interval::from_biguint(n, wp)).with_precision(prec)
    };
    LN_CACHE.with(|c| c.borrow_mut().insert(key, v.clone()));
    v
}

/// Enclosure of `ln |q|` for a nonzero rational.
pub fn ln_rational(q: &BigRational, prec: u32) -> Interval {
    assert!(!q.is_zero(), "logarithm of zero");
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    (&ln_biguint(n, prec) - &ln_biguint(d, prec)).with_precision(prec)
}

fn exp_dyadic(x: &Dyadic, prec: u32) -> Interval {
    if x.is_zero() {
        return Interval::one(prec);
    }
    let s = (x.magnitude_bits() + 1).max(0);
    let wp = prec + GUARD + s as u32;
    let r = Interval::point(x.mul_pow2(-s), wp);
    let eps = Dyadic::new(BigInt::one(), -(wp as i64) - 2);
    let mut sum = Interval::one(wp);
    let mut term = Interval::one(wp);
    let mut j = 1i64;
    loop {
        term = (&term * &r).div_int(j);
        sum = &sum + &term;
        j += 1;
        let mag = term.abs();
        if mag.hi() < &eps {
            // With |r| <= 1/2 the remaining tail is below |term|.
            let b = mag.hi().clone();
            sum = &sum + &Interval::new(-&b, b, wp);
            break;
        }
    }
    for _ in 0..s {
        sum = sum.square();
    }
    sum.with_precision(prec)
}

/// Enclosure of `exp x`.
pub fn exp(x: &Interval) -> Interval {
    let prec = x.precision();
    if x.is_point() {
        return exp_dyadic(x.lo(), prec);
    }
    let lo = exp_dyadic(x.lo(), prec);
    let hi = exp_dyadic(x.hi(), prec);
    Interval::new(lo.lo().clone(), hi.hi().clone(), prec)
}

/// Enclosure of Euler's number.
pub fn e(prec: u32) -> Interval {
    exp(&Interval::one(prec))
}

/// `x^y` for positive `x`.
pub fn powr(x: &Interval, y: &Interval) -> Interval {
    let prec = x.precision().max(y.precision());
    let wp = prec + GUARD;
    let l = ln(&x.with_precision(wp));
    exp(&(&l * &y.with_precision(wp))).with_precision(prec)
}

/// Real `n`-th root of a positive interval.
pub fn nth_root(x: &Interval, n: u32) -> Interval {
    assert!(n >= 1);
    if n == 1 {
        return x.clone();
    }
    if n == 2 {
        return x.sqrt();
    }
    let prec = x.precision();
    let wp = prec + GUARD;
    exp(&ln(&x.with_precision(wp)).div_int(n as i64)).with_precision(prec)
}

/// `log10 x` for positive `x`.
pub fn log10(x: &Interval) -> Interval {
    let prec = x.precision();
    let wp = prec + GUARD;
    let ten = ln_biguint(&BigUint::from(10u32), wp);
    ln(&x.with_precision(wp)).div(&ten).with_precision(prec)
}

/// `ln n!`.
pub fn ln_factorial(n: u64, prec: u32) -> Interval {
    let mut f = BigUint::one();
    for i in 2..=n {
        f *= i;
    }
    ln_biguint(&f, prec)
}

/// `ln x`, or `None` when `x` is not certainly positive.
pub fn ln_checked(x: &Interval) -> Option<Interval> {
    if x.is_positive() {
        Some(ln(x))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(iv: &Interval, v: f64, tol: f64) -> bool {
        (iv.to_f64() - v).abs() <= tol
    }

    #[test]
    fn ln_two_matches_double() {
        let l = ln2(128);
        assert!(close(&l, std::f64::consts::LN_2, 1e-16));
        assert!(l.width().to_f64() < 1e-36);
    }

    #[test]
    fn ln_of_small_integers() {
        for n in 2u32..40 {
            let l = ln_biguint(&BigUint::from(n), 128);
            assert!(close(&l, (n as f64).ln(), 1e-14), "ln {n}");
        }
    }

    #[test]
    fn ln_of_rationals_is_odd() {
        let q = BigRational::new(BigInt::from(4), BigInt::from(9));
        let a = ln_rational(&q, 100);
        let b = ln_rational(&q.recip(), 100);
        assert!((&a + &b).contains_zero());
    }

    #[test]
    fn exp_inverts_ln() {
        let x = Interval::from_rational(&BigRational::new(BigInt::from(7), BigInt::from(3)), 128);
        let back = exp(&ln(&x));
        assert!(back.contains_rational(&BigRational::new(BigInt::from(7), BigInt::from(3))));
        assert!(back.width().to_f64() < 1e-30);
    }

    #[test]
    fn exp_of_large_arguments() {
        let x = Interval::from_int(100, 128);
        let v = exp(&x);
        assert!(((v.to_f64() / 100f64.exp()) - 1.0).abs() < 1e-13);
        let negative = exp(&Interval::from_int(-50, 128));
        assert!(((negative.to_f64() / (-50f64).exp()) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn euler_number() {
        assert!(close(&e(128), std::f64::consts::E, 1e-15));
    }

    #[test]
    fn roots_and_powers() {
        let x = Interval::from_int(81, 128);
        let r = nth_root(&x, 4);
        assert!(r.contains_rational(&BigRational::from_integer(BigInt::from(3))));
        let p = powr(&Interval::from_int(2, 128), &Interval::from_int(10, 128));
        assert!(p.contains_rational(&BigRational::from_integer(BigInt::from(1024))));
    }
}
