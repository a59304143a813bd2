use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{MonoError, Result};
use crate::matkit::IntMatrix;
use crate::numkit::{format_rat, parse_rat, Rat};

/// Default cap on the bit size of a coordinate produced by direct evaluation.
pub const COORD_BIT_CAP: u64 = 1 << 20;

/// A point of the torus with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointGm {
    coords: Vec<Rat>,
}

impl PointGm {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(MonoError::domain("a point needs at least one coordinate"));
        }
        if let Some(i) = coords.iter().position(Zero::is_zero) {
            return Err(MonoError::domain(format!("coordinate {} is zero", i + 1)));
        }
        Ok(PointGm { coords })
    }

    pub fn from_i64(c: &[(i64, i64)]) -> Result<Self> {
        if c.iter().any(|&(_, d)| d == 0) {
            return Err(MonoError::domain("zero denominator"));
        }
        PointGm::new(c.iter().map(|&(n, d)| Rat::new(n.into(), d.into())).collect())
    }

    pub fn ints(c: &[i64]) -> Result<Self> {
        PointGm::new(c.iter().map(|&n| Rat::from_integer(n.into())).collect())
    }

    /// `"2,3"`, `"4/9,-6"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| parse_rat(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        PointGm::new(coords).map_err(|e| match e {
            MonoError::Domain(m) => MonoError::Parse(format!("{s:?}: {m}")),
            other => other,
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_torsion(&self) -> bool {
        self.coords.iter().all(|x| x.abs().is_one())
    }

    /// Coordinate-wise `d`-th power.
    pub fn pow(&self, d: i32) -> PointGm {
        PointGm { coords: self.coords.iter().map(|x| rat_pow(x, &BigInt::from(d))).collect() }
    }

    /// Coordinate-wise product.
    pub fn mul(&self, other: &PointGm) -> Result<PointGm> {
        check_dim(self.dim(), other.dim())?;
        Ok(PointGm { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).collect() })
    }

    fn bits(x: &Rat) -> u64 {
        x.numer().bits() + x.denom().bits()
    }
}

impl fmt::Display for PointGm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rat).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(MonoError::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn rat_pow(x: &Rat, e: &BigInt) -> Rat {
    let m: usize = e.magnitude().try_into().expect("exponent fits in usize");
    let p = num_traits::pow(x.clone(), m);
    if e.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// `phi_A(P)_i = prod_j x_j^{a_ij}` by direct rational arithmetic.
pub fn eval_monomial(a: &IntMatrix, p: &PointGm) -> Result<PointGm> {
    eval_monomial_capped(a, p, COORD_BIT_CAP)
}

pub fn eval_monomial_capped(a: &IntMatrix, p: &PointGm, bit_cap: u64) -> Result<PointGm> {
    check_dim(a.n(), p.dim())?;
    let mut out = Vec::with_capacity(a.n());
    for row in a.rows() {
        // bits(x^e) <= |e| bits(x)
        let mut est: u128 = 0;
        for (e, x) in row.iter().zip(&p.coords) {
            let mag: u128 = e.magnitude().try_into().unwrap_or(u128::MAX);
            est = est.saturating_add(mag.saturating_mul(PointGm::bits(x) as u128));
        }
        if est > bit_cap as u128 {
            return Err(MonoError::budget(format!(
                "coordinate would need about {est} bits (cap {bit_cap}); use valuation transport instead"
            )));
        }
        let mut acc = BigRational::one();
        for (e, x) in row.iter().zip(&p.coords) {
            if !e.is_zero() {
                acc *= rat_pow(x, e);
            }
        }
        out.push(acc);
    }
    Ok(PointGm { coords: out })
}
