//! Square integer matrices with nonzero determinant.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{MonoError, Result};

/// Fraction-free (Bareiss) elimination on a copy of `m`. Returns the rank and,
/// for square input, the determinant.
pub fn bareiss(m: &[Vec<BigInt>]) -> (usize, BigInt) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if rows == cols && r == rows {
        if sign < 0 {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (r, det)
}

pub fn int_rank(m: &[Vec<BigInt>]) -> usize {
    bareiss(m).0
}

pub fn int_mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][t] * &b[t][j];
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(MonoError::domain("empty matrix"));
        }
        for r in &rows {
            if r.len() != n {
                return Err(MonoError::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        if bareiss(&rows).1.is_zero() {
            return Err(MonoError::domain("matrix has zero determinant"));
        }
        Ok(IntMatrix { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        IntMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Caller guarantees a square matrix with nonzero determinant.
    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == rows.len()));
        IntMatrix { rows }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::from_rows_unchecked(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn diag(d: &[i64]) -> Result<Self> {
        let n = d.len();
        IntMatrix::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BigInt::from(d[i]) } else { BigInt::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn det(&self) -> BigInt {
        bareiss(&self.rows).1
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n() != other.n() {
            return Err(MonoError::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(IntMatrix::from_rows_unchecked(int_mat_mul(&self.rows, &other.rows)))
    }

    pub fn pow(&self, e: u32) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.n());
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = IntMatrix::from_rows_unchecked(int_mat_mul(&acc.rows, &base.rows));
            }
            k >>= 1;
            if k > 0 {
                base = IntMatrix::from_rows_unchecked(int_mat_mul(&base.rows, &base.rows));
            }
        }
        acc
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.rows[i][j].is_zero()))
    }

    pub fn is_triangular(&self) -> bool {
        let n = self.n();
        let upper = (0..n).all(|i| (0..i).all(|j| self.rows[i][j].is_zero()));
        let lower = (0..n).all(|i| (i + 1..n).all(|j| self.rows[i][j].is_zero()));
        upper || lower
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.n()).map(|i| self.rows[i][i].clone()).collect()
    }

    pub fn to_rational(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }

    /// Apply `f` to every entry of the rational copy (used for matrices over
    /// other fields).
    pub fn map_entries<F>(&self, f: impl Fn(&BigInt) -> F) -> Vec<Vec<F>> {
        self.rows.iter().map(|r| r.iter().map(&f).collect()).collect()
    }

    /// Largest absolute entry.
    pub fn max_abs_entry(&self) -> BigInt {
        self.rows
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn max_entry_bits(&self) -> u64 {
        self.rows.iter().flatten().map(|x| x.bits()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "rows": self.rows.iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>()
        })
    }

    pub fn from_json(v: &Value) -> Result<IntMatrix> {
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| MonoError::Parse("matrix JSON needs a \"rows\" array".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r
                .as_array()
                .ok_or_else(|| MonoError::Parse("matrix row is not an array".into()))?;
            out.push(r.iter().map(json_int).collect::<Result<Vec<_>>>()?);
        }
        if let Some(n) = v.get("n") {
            let n = n
                .as_u64()
                .ok_or_else(|| MonoError::Parse("\"n\" must be a positive integer".into()))?;
            if n as usize != out.len() {
                return Err(MonoError::DimensionMismatch {
                    expected: n as usize,
                    found: out.len(),
                });
            }
        }
        IntMatrix::new(out)
    }
}

fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn json_int(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(u) = v.as_u64() {
        return Ok(BigInt::from(u));
    }
    if let Some(s) = v.as_str() {
        return s
            .parse::<BigInt>()
            .map_err(|_| MonoError::Parse(format!("not an integer: {s:?}")));
    }
    Err(MonoError::Parse(format!("matrix entry is not an integer: {v}")))
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Product `M_1 M_2 ... M_k`, i.e. the matrix of `phi_{M_1} o ... o phi_{M_k}`.
pub fn word_product(ms: &[IntMatrix]) -> Result<IntMatrix> {
    let first = ms
        .first()
        .ok_or_else(|| MonoError::domain("empty word"))?;
    let mut acc = first.clone();
    for m in &ms[1..] {
        acc = acc.mul(m)?;
    }
    Ok(acc)
}
