//! Factorization over Q: squarefree decomposition, then Zassenhaus
//! (Berlekamp mod a small prime, Hensel lifting, subset recombination).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{self, PolyP};
use super::poly::{IntPoly, Poly};
use crate::error::{MonoError, Result};
use crate::numkit::primes::is_prime_u64;

pub const DEFAULT_DEGREE_BOUND: usize = 16;

/// Yun's algorithm over Q. Returns primitive squarefree factors with their
/// multiplicities; constant factors are dropped.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fq: Poly<BigRational> = f.to_field();
    let d = fq.derivative();
    let a0 = fq.gcd(&d);
    let mut b = fq.divrem(&a0).0;
    let mut c = d.divrem(&a0).0;
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&dd);
        if a.deg() > 0 {
            out.push((IntPoly::from_rational(&a), i));
        }
        b = b.divrem(&a).0;
        c = dd.divrem(&a).0;
        dd = c.sub(&b.derivative());
        i += 1;
    }
    out
}

pub fn is_squarefree(f: &IntPoly) -> bool {
    if f.deg() == 0 {
        return true;
    }
    let fq: Poly<BigRational> = f.to_field();
    fq.gcd(&fq.derivative()).deg() == 0
}

fn to_modp(f: &IntPoly, p: u64) -> PolyP {
    let pb = BigInt::from(p);
    let mut v: PolyP = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn from_modp(a: &PolyP) -> Vec<BigInt> {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn poly_mul_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    IntPoly::new(a.to_vec()).mul(&IntPoly::new(b.to_vec())).coeffs().to_vec()
}

fn reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|x| x.mod_floor(m)).collect();
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    assert!(g.gcd.is_one(), "not invertible");
    g.x.mod_floor(m)
}

/// Lift `F = g0 h0 (mod p)` (all monic) to `F = g h (mod p^k)`.
fn hensel_pair(
    target: &[BigInt],
    g0: &PolyP,
    h0: &PolyP,
    p: u64,
    k: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, _, t) = modp::xgcd(g0, h0, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut g = from_modp(g0);
    let mut h = from_modp(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = poly_mul_z(&g, &h);
        let n = target.len().max(prod.len());
        let diff: Vec<BigInt> = (0..n)
            .map(|i| {
                target.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default()
            })
            .collect();
        let e: Vec<BigInt> = diff
            .iter()
            .map(|x| {
                debug_assert!((x % &pj).is_zero());
                x / &pj
            })
            .collect();
        let e = to_modp(&IntPoly::new(e), p);
        if !e.is_empty() {
            let tau = modp::rem(&modp::mul(&t, &e, p), g0, p);
            let num = modp::sub(&e, &modp::mul(&tau, h0, p), p);
            let (sigma, r) = modp::divrem(&num, g0, p);
            debug_assert!(r.is_empty());
            let add = |a: &mut Vec<BigInt>, d: &PolyP| {
                if a.len() < d.len() {
                    a.resize(d.len(), BigInt::zero());
                }
                for (i, &c) in d.iter().enumerate() {
                    a[i] += &pj * BigInt::from(c);
                }
            };
            add(&mut g, &tau);
            add(&mut h, &sigma);
        }
        pj *= &pb;
    }
    let m = pj;
    (reduce(&g, &m), reduce(&h, &m))
}

/// Lift a full factorization of monic `target (mod p)` to `mod p^k`.
fn hensel_multi(target: &[BigInt], factors: &[PolyP], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let m = num_traits::pow(BigInt::from(p), k as usize);
        return vec![reduce(target, &m)];
    }
    let g0 = &factors[0];
    let h0 = factors[1..]
        .iter()
        .fold(vec![1u64], |acc, f| modp::mul(&acc, f, p));
    let (g, h) = hensel_pair(target, g0, &h0, p, k);
    let mut out = vec![g];
    out.extend(hensel_multi(&h, &factors[1..], p, k));
    out
}

fn choose_subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        choose_subsets(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Irreducible factors of a primitive squarefree polynomial of degree >= 1.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive();
    let n = f.deg();
    if n <= 1 {
        return vec![f];
    }
    if f.coeff(0).is_zero() {
        let x = IntPoly::from_i64(&[0, 1]);
        let mut rest = factor_squarefree(&f.div_exact(&x).unwrap());
        rest.push(x);
        rest.sort();
        return rest;
    }
    if n == 2 {
        let (c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2));
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        if disc.is_negative() {
            return vec![f];
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            return vec![f];
        }
        let two_a = BigInt::from(2) * &a;
        let r1 = IntPoly::new(vec![&s - &b, -two_a.clone()]).primitive();
        let r2 = IntPoly::new(vec![-&s - &b, -two_a]).primitive();
        let mut v = vec![r1, r2];
        v.sort();
        return v;
    }
    let lc = f.lc();
    // Pick a good prime, preferring the one with fewest modular factors.
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 6 && p < 1 << 20 {
        if is_prime_u64(p) && !(&lc % BigInt::from(p)).is_zero() {
            let fp = to_modp(&f, p);
            let fpm = modp::monic(&fp, p);
            if modp::deg(&modp::gcd(&fpm, &modp::derivative(&fpm, p), p)) == 0 {
                let fs = modp::berlekamp(&fpm, p);
                tried += 1;
                if fs.len() == 1 {
                    return vec![f];
                }
                if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
                    best = Some((p, fs));
                }
            }
        }
        p += 2;
    }
    let (p, modular) = best.expect("no suitable prime found");
    // Coefficient bound for any factor of f, times lc, doubled.
    let norm = f.norm2_sq().sqrt() + BigInt::one();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lc_inv = mod_inverse(&lc, &m);
    let target: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &lc_inv).mod_floor(&m)).collect();
    let lifted = hensel_multi(&target, &modular, p, k);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut cur = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut subsets = Vec::new();
        choose_subsets(remaining.len(), s, 0, &mut Vec::new(), &mut subsets);
        let mut hit = None;
        for sub in subsets {
            let lcc = cur.lc();
            let mut cand = vec![lcc.clone()];
            for &i in &sub {
                cand = reduce(&poly_mul_z(&cand, &lifted[remaining[i]]), &m);
            }
            let g = IntPoly::new(cand.iter().map(|x| sym_mod(x, &m)).collect()).primitive();
            if let Some(q) = cur.div_exact(&g) {
                hit = Some((sub, g, q));
                break;
            }
        }
        match hit {
            Some((sub, g, q)) => {
                found.push(g);
                cur = q.primitive();
                let drop: Vec<usize> = sub.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|i| !drop.contains(i));
            }
            None => s += 1,
        }
    }
    if cur.deg() > 0 {
        found.push(cur);
    }
    found.sort();
    found
}

/// Irreducible factors of `f` over Q with multiplicities. Factors are
/// primitive with positive leading coefficient; the product equals `f` up to
/// a rational unit.
pub fn factor_over_q(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    factor_over_q_bounded(f, DEFAULT_DEGREE_BOUND)
}

pub fn factor_over_q_bounded(f: &IntPoly, max_degree: usize) -> Result<Vec<(IntPoly, u32)>> {
    if f.is_zero() {
        return Err(MonoError::domain("factorization of the zero polynomial"));
    }
    if f.deg() > max_degree {
        return Err(MonoError::unsupported(format!(
            "polynomial degree {} exceeds the factorization bound {max_degree}",
            f.deg()
        )));
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for h in factor_squarefree(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// `n`-th cyclotomic test: whether a primitive irreducible polynomial is a
/// cyclotomic polynomial.
pub fn is_cyclotomic(p: &IntPoly) -> bool {
    let d = p.deg();
    if d == 0 || !p.lc().is_one() {
        return false;
    }
    // phi(n) = d forces n <= 2 d^2 + 2 (crudely; phi(n) >= sqrt(n/2)).
    let limit = 2 * d * d + 2;
    let xq = |k: usize| {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] = -BigInt::one();
        c[k] = BigInt::one();
        IntPoly::new(c)
    };
    (1..=limit).any(|n| xq(n).div_exact(p).is_some())
}

/// Least common multiple of primitive integer polynomials, as a primitive
/// polynomial.
pub fn poly_lcm(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let aq: Poly<BigRational> = a.to_field();
    let bq: Poly<BigRational> = b.to_field();
    let g = aq.gcd(&bq);
    IntPoly::from_rational(&aq.mul(&bq).divrem(&g).0)
}
