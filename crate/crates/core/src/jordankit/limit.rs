use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::profile::{jordan_profile, JordanProfile};
use crate::error::{MonoError, Result};
use crate::matkit::field::{identity, mat_add, mat_mul, mat_scale, mat_sub, Field, Mat};
use crate::matkit::{CertifiedReal, IntMatrix, IntPoly, NfElem, Poly};
use crate::numkit::{Dyadic, Interval, Quad};

/// `B = lim A^n / (n^l rho^n)` along `n = n0 (mod m)`.
#[derive(Clone, Debug)]
pub struct LimitMatrixB {
    pub entries: Vec<Vec<CertifiedReal>>,
    pub m: u32,
    pub n0: u32,
    pub l: usize,
    /// `xi_i` for each maximal Jordan subspace: `B v_top = xi_i / (rho^l l!) v_1`.
    pub xi_signs: Vec<i32>,
    pub rho: CertifiedReal,
}

impl LimitMatrixB {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn exact_entries(&self) -> Option<Vec<Vec<Quad>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.exact.clone()).collect::<Option<Vec<_>>>())
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        self.exact_entries().is_some()
    }

    pub fn intervals(&self, prec: u32) -> Vec<Vec<Interval>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.interval(prec)).collect())
            .collect()
    }

    pub fn max_width(&self) -> Dyadic {
        self.entries
            .iter()
            .flatten()
            .map(|e| e.enclosure.width())
            .max()
            .unwrap_or_else(Dyadic::zero)
    }
}

fn int_to_field<F: Field>(a: &IntMatrix) -> Mat<F> {
    a.map_entries(|x| F::from_bigint(x))
}

fn poly_at<F: Field>(p: &Poly<F>, a: &Mat<F>) -> Mat<F> {
    let n = a.len();
    let mut acc: Mat<F> = vec![vec![F::zero_elem(); n]; n];
    for c in p.coeffs().iter().rev() {
        acc = mat_add(&mat_mul(&acc, a), &mat_scale(&identity(n), c));
    }
    acc
}

/// `(A - lambda)^l P_lambda / (l! lambda^l)` over `Q[x]/(f)`, with `lambda`
/// the class of `x` and `P_lambda` the spectral projector onto the
/// generalized eigenspace of `lambda`.
fn dominant_term(a: &IntMatrix, chi: &IntPoly, f: &IntPoly, e: u32, l: usize) -> Mat<NfElem> {
    let lambda = NfElem::generator(f);
    let chi_k: Poly<NfElem> =
        Poly::new(chi.coeffs().iter().map(NfElem::from_bigint).collect());
    let lin = Poly::new(vec![lambda.neg(), NfElem::one_elem()]);
    let le = lin.pow(e);
    let (g, rem) = chi_k.divrem(&le);
    assert!(rem.is_zero(), "factor multiplicity mismatch");
    let (d, _, t) = le.xgcd(&g);
    assert_eq!(d.deg(), 0, "cofactor not coprime");
    let u = t.mul(&g);
    let ak: Mat<NfElem> = int_to_field(a);
    let proj = poly_at(&u, &ak);
    let shifted = mat_sub(&ak, &mat_scale(&identity(a.n()), &lambda));
    let mut term = proj;
    for _ in 0..l {
        term = mat_mul(&shifted, &term);
    }
    let mut fact = BigInt::one();
    for k in 2..=l {
        fact *= BigInt::from(k);
    }
    let scale = NfElem::from_bigint(&fact).mul(&lambda_pow(&lambda, l)).inv();
    mat_scale(&term, &scale)
}

fn lambda_pow(x: &NfElem, l: usize) -> NfElem {
    (0..l).fold(NfElem::one_elem(), |acc, _| acc.mul(x))
}

pub fn limit_matrix_b(a: &IntMatrix, tol: f64) -> Result<LimitMatrixB> {
    let p = jordan_profile(a)?;
    limit_from_profile(a, &p, tol)
}

/// B from the spectral projectors of the eigenvalues `rho` and `-rho`, taken
/// along even `n` when `-rho` is an eigenvalue. Entries are exact when those
/// eigenvalues have degree at most 2, and otherwise enclosed to width `tol`.
pub fn limit_from_profile(a: &IntMatrix, p: &JordanProfile, tol: f64) -> Result<LimitMatrixB> {
    if !p.dominant_real {
        return Err(MonoError::unsupported(
            "an eigenvalue of maximal modulus is not real; the limit matrix does not exist",
        ));
    }
    let n = a.n();
    let want_bits = if tol > 0.0 { (-tol.log2()).ceil().max(0.0) as u32 } else { 200 };
    let prec = (want_bits + 64).max(128);
    let mut s = p.spectrum.clone();
    let mut by_factor: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &k in &s.dominant {
        by_factor.entry(s.eigen[k].factor).or_default().push(k);
    }
    let terms: Vec<(usize, Mat<NfElem>)> = by_factor
        .keys()
        .map(|&fi| {
            let (f, e) = &s.factors[fi];
            (fi, dominant_term(a, &s.charpoly, f, *e, p.l))
        })
        .collect();

    let exact = by_factor.keys().all(|&fi| s.factors[fi].0.deg() <= 2);
    let entries: Vec<Vec<CertifiedReal>> = if exact {
        let mut b: Mat<Quad> = vec![vec![Quad::zero(); n]; n];
        for (fi, t) in &terms {
            for &k in &by_factor[fi] {
                let root = s.eigen[k].exact_real().expect("real root of degree <= 2");
                for i in 0..n {
                    for j in 0..n {
                        b[i][j] = &b[i][j] + &t[i][j].eval_quad(&root);
                    }
                }
            }
        }
        b.into_iter()
            .map(|row| row.into_iter().map(|q| CertifiedReal::from_exact(q, prec)).collect())
            .collect()
    } else {
        let tol_d = Dyadic::new(BigInt::one(), -(want_bits as i64));
        loop {
            let mut b: Mat<Interval> = vec![vec![Interval::zero(prec); n]; n];
            for (fi, t) in &terms {
                for &k in &by_factor[fi] {
                    let root = match s.eigen[k].exact_real() {
                        Some(q) => q.to_interval(prec),
                        None => s.eigen[k].re(prec),
                    };
                    for i in 0..n {
                        for j in 0..n {
                            b[i][j] = &b[i][j] + &t[i][j].eval_interval(&root);
                        }
                    }
                }
            }
            let widest = b.iter().flatten().map(Interval::width).max().unwrap();
            if widest <= tol_d {
                break b
                    .into_iter()
                    .map(|row| row.into_iter().map(CertifiedReal::from_enclosure).collect())
                    .collect();
            }
            if s.bits() >= crate::matkit::roots::MAX_ROOT_BITS {
                return Err(MonoError::budget("limit matrix enclosure did not reach the tolerance"));
            }
            let nb = (s.bits() * 2).min(crate::matkit::roots::MAX_ROOT_BITS);
            s.refine(nb)?;
        }
    };

    let mut xi_signs = Vec::new();
    for (&fi, ks) in &by_factor {
        let fp = &p.factors[fi];
        let count = fp.blocks_of_size(p.l + 1);
        for &k in ks {
            let sign = s.eigen[k].real_sign();
            let xi = if sign < 0 && p.l % 2 == 1 { -1 } else { 1 };
            xi_signs.extend(std::iter::repeat_n(xi, count));
        }
    }

    Ok(LimitMatrixB { entries, m: p.m, n0: 0, l: p.l, xi_signs, rho: p.rho.clone() })
}
