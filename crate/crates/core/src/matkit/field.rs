//! A minimal field abstraction and dense linear algebra over it.
//!
//! Elements carry whatever context they need (a quadratic element knows its
//! radicand, a number-field element its modulus), so `zero()` and `one()`
//! are context free and adopt the context of the other operand.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numkit::Quad;

pub trait Field: Clone + PartialEq + Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_bigint(n: &BigInt) -> Self;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one_elem()
    }
}

impl Field for BigRational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Field for Quad {
    fn zero_elem() -> Self {
        Quad::zero()
    }
    fn one_elem() -> Self {
        Quad::one()
    }
    fn is_zero_elem(&self) -> bool {
        Quad::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Quad::inv(self)
    }
    fn from_bigint(n: &BigInt) -> Self {
        Quad::rational(BigRational::from_integer(n.clone()))
    }
}

pub type Mat<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Mat<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one_elem() } else { F::zero_elem() }).collect())
        .collect()
}

pub fn mat_mul<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    let mut out = vec![vec![F::zero_elem(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero_elem() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero_elem() {
                    out[i][j] = out[i][j].add(&a[i][t].mul(&b[t][j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(a: &Mat<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero_elem(), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

pub fn mat_sub<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

pub fn mat_add<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect())
        .collect()
}

pub fn mat_scale<F: Field>(a: &Mat<F>, c: &F) -> Mat<F> {
    a.iter()
        .map(|r| r.iter().map(|x| x.mul(c)).collect())
        .collect()
}

pub fn mat_pow<F: Field>(a: &Mat<F>, e: u32) -> Mat<F> {
    let mut acc = identity(a.len());
    for _ in 0..e {
        acc = mat_mul(&acc, a);
    }
    acc
}

pub fn transpose<F: Field>(a: &Mat<F>) -> Mat<F> {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(a: &mut Mat<F>) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero_elem()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        for j in c..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero_elem() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&a[r][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(a: &Mat<F>) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Basis of the right kernel, one vector per free column, read off the
/// reduced echelon form (free variable set to 1, others 0).
pub fn kernel<F: Field>(a: &Mat<F>) -> Vec<Vec<F>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero_elem(); cols];
        v[free] = F::one_elem();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = m[row][free].neg();
        }
        basis.push(v);
    }
    basis
}

pub fn inverse<F: Field>(a: &Mat<F>) -> Option<Mat<F>> {
    let n = a.len();
    let mut aug: Mat<F> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { F::one_elem() } else { F::zero_elem() }));
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant<F: Field>(a: &Mat<F>) -> F {
    let n = a.len();
    let mut m = a.clone();
    let mut det = F::one_elem();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero_elem()) else {
            return F::zero_elem();
        };
        if p != c {
            m.swap(p, c);
            det = det.neg();
        }
        det = det.mul(&m[c][c]);
        let inv = m[c][c].inv();
        for i in c + 1..n {
            if m[i][c].is_zero_elem() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for j in c..n {
                let t = f.mul(&m[c][j]);
                m[i][j] = m[i][j].sub(&t);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rat_int;

    fn q(rows: &[&[i64]]) -> Mat<BigRational> {
        rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0]).iter().all(|x| x.is_zero_elem()));
    }

    #[test]
    fn inverse_round_trip() {
        let a = q(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert_eq!(determinant(&a), rat_int(1));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
    }
}
