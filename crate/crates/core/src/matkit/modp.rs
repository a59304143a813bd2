//! Polynomials over a prime field F_p (p < 2^31) and Berlekamp's algorithm.

pub type PolyP = Vec<u64>;

fn trim(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn deg(a: &PolyP) -> usize {
    a.len().saturating_sub(1)
}

pub fn add(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &PolyP, k: u64, p: u64) -> PolyP {
    trim(a.iter().map(|&x| x * (k % p) % p).collect())
}

pub fn monic(a: &PolyP, p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub fn divrem(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let db = deg(b);
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = r[k + db];
        if top == 0 {
            continue;
        }
        let c = top * inv % p;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

pub fn rem(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    divrem(a, b, p).1
}

pub fn gcd(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = s1;
        s1 = s;
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = t1;
        t1 = t;
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &PolyP, p: u64) -> PolyP {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| (i as u64 % p) * x % p)
            .collect(),
    )
}

pub fn powmod_poly(base: &PolyP, mut e: u64, m: &PolyP, p: u64) -> PolyP {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// Left kernel of an `n x n` matrix over F_p.
fn left_kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    // Transpose, then right kernel by elimination.
    let mut a: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for j in 0..n {
            a[r][j] = a[r][j] * inv % p;
        }
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[row][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Irreducible monic factors of a monic squarefree polynomial over F_p.
pub fn berlekamp(f: &PolyP, p: u64) -> Vec<PolyP> {
    let n = deg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    let xp = powmod_poly(&vec![0, 1], p, f, p);
    let mut rows = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for i in 0..n {
        let mut row = vec![0u64; n];
        for (j, &c) in cur.iter().enumerate() {
            row[j] = c;
        }
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        cur = rem(&mul(&cur, &xp, p), f, p);
    }
    let basis = left_kernel(&rows, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    for v in basis.iter() {
        if factors.len() == r {
            break;
        }
        let v = trim(v.clone());
        if deg(&v) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors.drain(..) {
            if deg(&u) <= 1 {
                next.push(u);
                continue;
            }
            // u is the product of gcd(u, v - s) over s in F_p.
            let mut found = 0;
            for s in 0..p {
                let g = gcd(&u, &sub(&v, &vec![s], p), p);
                if deg(&g) > 0 {
                    found += deg(&g);
                    next.push(g);
                }
                if found == deg(&u) {
                    break;
                }
            }
        }
        factors = next;
    }
    factors.sort();
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berlekamp_splits_cyclotomic_mod_p() {
        // x^4 + 1 splits into quadratics mod 3.
        let f = vec![1, 0, 0, 0, 1];
        let fs = berlekamp(&f, 3);
        assert_eq!(fs.len(), 2);
        let prod = fs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, 3));
        assert_eq!(prod, f);
        // x^4 + 1 = product of linear factors mod 17.
        let fs17 = berlekamp(&f, 17);
        assert_eq!(fs17.len(), 4);
    }

    #[test]
    fn berlekamp_detects_irreducible() {
        // x^2 + 1 is irreducible mod 7.
        assert_eq!(berlekamp(&vec![1, 0, 1], 7).len(), 1);
        // x^3 - x = x(x-1)(x+1) mod 5
        let f = vec![0, 4, 0, 1];
        assert_eq!(berlekamp(&f, 5).len(), 3);
    }

    #[test]
    fn xgcd_identity() {
        let a = vec![1, 0, 1];
        let b = vec![2, 1];
        let (g, s, t) = xgcd(&a, &b, 7);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, 7), &mul(&t, &b, 7), 7), vec![1]);
    }
}
