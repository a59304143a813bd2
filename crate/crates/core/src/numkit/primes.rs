//! Primality and integer factorization: trial division to 10^6, then
//! Pollard rho (Brent's variant) on whatever cofactor remains.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{MonoError, Result};

use super::rat::Rat;

const TRIAL_LIMIT: u32 = 1_000_000;
const SMALL_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const EXTRA_ROUNDS: usize = 64;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &SMALL_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mr_witness(n: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == nm1 {
        return false;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return false;
        }
    }
    true
}

/// Primality: deterministic below 2^64, otherwise Miller-Rabin with the
/// twelve fixed bases plus 64 pseudo-random ones.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    let nm1 = n - BigUint::one();
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    for &a in &SMALL_BASES {
        if mr_witness(n, &BigUint::from(a), &d, s) {
            return false;
        }
    }
    let mut state = 0x5151_7A7Au64 ^ n.bits();
    let range = n - BigUint::from(4u32);
    for _ in 0..EXTRA_ROUNDS {
        let mut words = Vec::new();
        for _ in 0..(n.bits() / 64 + 1) {
            words.push(splitmix(&mut state));
        }
        let r = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        let a = (r % &range) + BigUint::from(2u32);
        if mr_witness(n, &a, &d, s) {
            return false;
        }
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let cc = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &cc) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let m: u64 = 128;
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_large(n: BigUint, out: &mut BTreeMap<BigUint, u32>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return Ok(());
    }
    for c in 1..64u64 {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split_large(d, out)?;
            split_large(other, out)?;
            return Ok(());
        }
    }
    Err(MonoError::budget(format!("could not factor {n}")))
}

/// Prime factorization of a positive integer.
pub fn factor_integer(n: &BigUint) -> Result<BTreeMap<BigUint, u32>> {
    if n.is_zero() {
        return Err(MonoError::domain("factorization of zero"));
    }
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    let push = |m: &mut BigUint, p: u32, out: &mut BTreeMap<BigUint, u32>| {
        let pb = BigUint::from(p);
        let mut e = 0;
        while (&*m % &pb).is_zero() {
            *m /= &pb;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    };
    push(&mut m, 2, &mut out);
    let mut p = 3u32;
    while p <= TRIAL_LIMIT {
        if BigUint::from(p) * BigUint::from(p) > m {
            break;
        }
        push(&mut m, p, &mut out);
        p += 2;
    }
    if m.is_one() {
        return Ok(out);
    }
    if BigUint::from(TRIAL_LIMIT) * BigUint::from(TRIAL_LIMIT) > m || is_prime(&m) {
        *out.entry(m).or_insert(0) += 1;
        return Ok(out);
    }
    split_large(m, &mut out)?;
    Ok(out)
}

/// Valuations `v_p(x)` of a nonzero rational; only nonzero entries.
pub fn factor_rational(x: &Rat) -> Result<BTreeMap<BigUint, i64>> {
    if x.numer().is_zero() {
        return Err(MonoError::domain("factor_rational of zero"));
    }
    let mut out: BTreeMap<BigUint, i64> = BTreeMap::new();
    for (p, e) in factor_integer(x.numer().magnitude())? {
        out.insert(p, e as i64);
    }
    for (p, e) in factor_integer(x.denom().magnitude())? {
        *out.entry(p).or_insert(0) -= e as i64;
    }
    out.retain(|_, e| *e != 0);
    Ok(out)
}

/// Rebuild `|x|` from its valuations.
pub fn from_valuations(vals: &BTreeMap<BigUint, i64>) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (p, &e) in vals {
        let pe = num_traits::pow(BigInt::from(p.clone()), e.unsigned_abs() as usize);
        if e > 0 {
            num *= pe;
        } else {
            den *= pe;
        }
    }
    Rat::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rat::rat;

    fn map(v: &[(u32, i64)]) -> BTreeMap<BigUint, i64> {
        v.iter().map(|&(p, e)| (BigUint::from(p), e)).collect()
    }

    #[test]
    fn rational_factorizations() {
        assert_eq!(factor_rational(&rat(12, 5)).unwrap(), map(&[(2, 2), (3, 1), (5, -1)]));
        assert!(factor_rational(&rat(1, 1)).unwrap().is_empty());
        assert_eq!(factor_rational(&rat(-8, 27)).unwrap(), map(&[(2, 3), (3, -3)]));
        assert!(factor_rational(&rat(0, 1)).is_err());
    }

    #[test]
    fn primality_small_and_large() {
        let primes: Vec<u64> = (2..200).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes.len(), 46);
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
        let m127 = (BigUint::one() << 127u32) - BigUint::one();
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 * BigUint::from(3u32))));
    }

    #[test]
    fn pollard_splits_semiprimes() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let f = factor_integer(&(&p * &q * &p)).unwrap();
        assert_eq!(f.get(&p), Some(&2));
        assert_eq!(f.get(&q), Some(&1));
    }

    #[test]
    fn valuation_round_trip() {
        let x = rat(-3 * 49, 1024 * 11);
        let v = factor_rational(&x).unwrap();
        assert_eq!(from_valuations(&v), x.clone() * rat(-1, 1));
    }
}
