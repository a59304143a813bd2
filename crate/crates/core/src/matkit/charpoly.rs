//! Characteristic polynomials and degrees of monomial maps.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::intmatrix::{int_mat_mul, IntMatrix};
use super::poly::IntPoly;

/// `det(xI - A)` by Faddeev-LeVerrier; every division by `k` is exact.
pub fn charpoly(a: &IntMatrix) -> IntPoly {
    let n = a.n();
    let rows = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = int_mat_mul(rows, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = int_mat_mul(rows, &next);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let c = -tr / BigInt::from(k);
        coeffs[n - k] = c;
        m = next;
    }
    IntPoly::new(coeffs)
}

/// Algebraic degree of the rational self-map of P^N induced by `A`.
///
/// Column `j` needs the denominator `x_j^{c_j}` with
/// `c_j = max(0, max_i -a_ij)`; after homogenizing the `N + 1` coordinate
/// monomials the common degree is `sum_j c_j + max(0, max_i sum_j a_ij)`.
/// Every variable, and the hyperplane coordinate, appears with exponent 0 in
/// at least one monomial, so no monomial factor is left to divide out.
pub fn monomial_degree(a: &IntMatrix) -> BigInt {
    let n = a.n();
    let mut total = BigInt::zero();
    for j in 0..n {
        let c = (0..n)
            .map(|i| -a.get(i, j).clone())
            .max()
            .unwrap()
            .max(BigInt::zero());
        total += c;
    }
    let row_max = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).sum::<BigInt>())
        .max()
        .unwrap()
        .max(BigInt::zero());
    total + row_max
}
