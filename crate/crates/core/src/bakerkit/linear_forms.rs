use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{MonoError, Result};
use crate::numkit::elementary::{e, ln};
use crate::numkit::{factor_integer, AlgebraicScalar, Interval, LogForm, Quad};

/// `C11(n) = 2^(8n+53) n^(2n)`, the smallest admissible value.
pub fn c11(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(MonoError::domain("C11 needs n >= 1"));
    }
    let two_part = BigInt::one() << (8 * n + 53) as usize;
    Ok(two_part * num_traits::pow(BigInt::from(n), (2 * n) as usize))
}

/// `log C11(n) = (8n+53) log 2 + 2n log n`, exact over the primes of `n`.
pub fn c11_log_form(n: u64) -> Result<LogForm> {
    if n == 0 {
        return Err(MonoError::domain("C11 needs n >= 1"));
    }
    let mut f = LogForm::term(BigUint::from(2u32), Quad::from_int(8 * n as i64 + 53));
    for (p, k) in factor_integer(&BigUint::from(n))? {
        f.add_term(p, Quad::from_int(2 * n as i64 * k as i64));
    }
    Ok(f)
}

/// `U = C11(n) D^(n+2) prod log A_j (log B + log log A)` together with its log.
#[derive(Clone, Debug)]
pub struct BakerU {
    pub n: usize,
    pub u: Interval,
    pub log_u: Interval,
    /// `log A` after taking the max with `e`.
    pub log_a: Interval,
}

/// Inputs are logarithms: `log_a[j] = log A_j` and `log_b = log B`.
///
/// The displayed `U` of the classical bound carries a leading minus sign
/// against `|Lambda| >= e^(-U)`; this returns the positive magnitude.
pub fn baker_u(d: u64, log_a: &[Interval], log_b: &Interval, prec: u32) -> Result<BakerU> {
    let n = log_a.len();
    if n == 0 {
        return Err(MonoError::domain("need at least one A_j"));
    }
    let mut failures = Vec::new();
    if d == 0 {
        failures.push("D >= 1".to_string());
    }
    for (j, la) in log_a.iter().enumerate() {
        if la.certainly_lt(&Interval::from_int(n as i64, prec)) {
            failures.push(format!("A_{} >= e^{}", j + 1, n));
        }
    }
    if log_b.is_negative() {
        failures.push("B >= 1".to_string());
    }
    if !failures.is_empty() {
        return Err(MonoError::domain(format!("hypotheses fail: {}", failures.join(", "))));
    }
    let wp = prec + 32;
    let mut big_log_a = e(wp);
    let mut prod = Interval::one(wp);
    for la in log_a {
        let la = la.with_precision(wp);
        big_log_a = big_log_a.max(&la);
        prod = &prod * &la;
    }
    let c = Interval::from_bigint(&c11(n as u64)?, wp);
    let dpow = Interval::from_bigint(&num_traits::pow(BigInt::from(d), n + 2), wp);
    let tail = &log_b.with_precision(wp).max_zero() + &ln(&big_log_a);
    let u = &(&(&c * &dpow) * &prod) * &tail;
    let log_u = ln(&u);
    Ok(BakerU {
        n,
        u: u.with_precision(prec),
        log_u: log_u.with_precision(prec),
        log_a: big_log_a.with_precision(prec),
    })
}

/// Both heights of a rational or real quadratic number.
#[derive(Clone, Debug)]
pub struct HeightPair {
    pub h: BigInt,
    pub h_mult: Interval,
    pub h_mult_exact: Option<Quad>,
    pub h_mult_text: String,
    /// `H <= (2 H_mult)^deg`, decided exactly.
    pub bound_holds: bool,
}

pub fn height_pair(x: &AlgebraicScalar, prec: u32) -> HeightPair {
    HeightPair {
        h: x.h.clone(),
        h_mult: x.h_mult(prec),
        h_mult_exact: x.h_mult_exact(),
        h_mult_text: x.h_mult_string(),
        bound_holds: x.naive_bound_holds(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rat;

    const P: u32 = 128;

    #[test]
    fn c11_values() {
        assert_eq!(c11(1).unwrap(), BigInt::one() << 61);
        assert_eq!(c11(2).unwrap(), BigInt::one() << 73);
        assert_eq!(c11(3).unwrap(), (BigInt::one() << 77) * 729);
        assert!(c11(0).is_err());
        for n in 1..12u64 {
            let f = c11_log_form(n).unwrap().to_interval(P);
            let direct = ln(&Interval::from_bigint(&c11(n).unwrap(), P));
            assert!(f.overlaps(&direct));
        }
    }

    #[test]
    fn u_examples() {
        let ee = e(P);
        let one = Interval::one(P);
        let u = baker_u(1, std::slice::from_ref(&ee), &one, P).unwrap();
        let expect = (&ee * &Interval::from_bigint(&(BigInt::one() << 62), P)).to_f64();
        assert!((u.u.to_f64() / expect - 1.0).abs() < 1e-14);
        let u = baker_u(1, std::slice::from_ref(&ee), &Interval::zero(P), P).unwrap();
        assert!((u.u.to_f64() / expect - 0.5).abs() < 1e-14);
        // A = max(e^2, e^2, e^e) = e^e, so log log A = 1
        let two = Interval::from_int(2, P);
        let u = baker_u(1, &[two.clone(), two], &one, P).unwrap();
        assert!((u.u.to_f64() / 2f64.powi(76) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn u_hypotheses() {
        let one = Interval::one(P);
        let err = baker_u(1, &[one.clone(), one.clone()], &one, P).unwrap_err();
        assert!(err.to_string().contains("A_1 >= e^2"));
        let err = baker_u(1, &[e(P)], &Interval::from_int(-1, P), P).unwrap_err();
        assert!(err.to_string().contains("B >= 1"));
        assert!(baker_u(0, &[e(P)], &one, P).is_err());
    }

    #[test]
    fn height_pairs() {
        let s = height_pair(&AlgebraicScalar::rational(rat(2, 3)), P);
        assert_eq!(s.h, BigInt::from(3));
        assert_eq!(s.h_mult_exact, Some(Quad::from_int(3)));
        let r5 = height_pair(&AlgebraicScalar::new(Quad::sqrt_int(&BigInt::from(5))), P);
        assert_eq!(r5.h, BigInt::from(5));
        assert_eq!(r5.h_mult_text, "sqrt(5)");
        assert!(r5.bound_holds);
    }
}
