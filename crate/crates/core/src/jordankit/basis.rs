use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::profile::{jordan_profile, JordanProfile};
use crate::error::{MonoError, Result};
use crate::matkit::field::{determinant, identity, kernel, mat_mul, mat_scale, mat_sub, rank, Mat};
use crate::matkit::{EigenValue, IntMatrix};
use crate::numkit::{AlgebraicScalar, Interval, Quad};

#[derive(Clone, Debug, PartialEq)]
pub struct JordanBlock {
    pub eigenvalue: Quad,
    pub size: usize,
    /// First column of the block in `J`.
    pub start: usize,
}

#[derive(Clone, Debug)]
pub struct JordanBasisData {
    /// Columns are the Jordan chains, eigenvector first.
    pub j: Mat<Quad>,
    pub det_j: Quad,
    pub blocks: Vec<JordanBlock>,
    /// Radicand of the coefficient field, or 0 for Q.
    pub field_d: BigInt,
    pub entry_heights: Vec<Vec<AlgebraicScalar>>,
    pub inv_det_height: AlgebraicScalar,
}

impl JordanBasisData {
    pub fn jordan_form(&self) -> Mat<Quad> {
        let n = self.j.len();
        let mut jf = vec![vec![Quad::zero(); n]; n];
        for b in &self.blocks {
            for k in 0..b.size {
                jf[b.start + k][b.start + k] = b.eigenvalue.clone();
                if k + 1 < b.size {
                    jf[b.start + k][b.start + k + 1] = Quad::one();
                }
            }
        }
        jf
    }

    /// `log max_{entries} H(a)`.
    pub fn max_entry_log_height(&self, prec: u32) -> Interval {
        self.entry_heights
            .iter()
            .flatten()
            .map(|h| h.log_h_mult(prec))
            .reduce(|a, b| a.max(&b))
            .unwrap()
    }

    /// `log C(A) = log(max H(a) * H(1/det J))`.
    pub fn log_c_a(&self, prec: u32) -> Interval {
        &self.max_entry_log_height(prec) + &self.inv_det_height.log_h_mult(prec)
    }

    /// Text form of `max H(a) * H(1/det J)` factors, for reports.
    pub fn max_entry_height_string(&self, prec: u32) -> String {
        let mut best: Option<(&AlgebraicScalar, Interval)> = None;
        for h in self.entry_heights.iter().flatten() {
            let v = h.log_h_mult(prec);
            if best.as_ref().is_none_or(|(_, b)| v.lo() > b.hi()) {
                best = Some((h, v));
            }
        }
        best.map(|(h, _)| h.h_mult_string()).unwrap_or_else(|| "1".into())
    }
}

/// Scale a vector over Q(sqrt d) so all coordinates are integral with no
/// common integer factor.
fn primitive_vector(v: &[Quad]) -> Vec<Quad> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.a.denom()).lcm(x.b.denom());
    }
    let lq = Quad::rational(BigRational::from_integer(l));
    let scaled: Vec<Quad> = v.iter().map(|x| x * &lq).collect();
    let mut g = BigInt::zero();
    for x in &scaled {
        g = g.gcd(x.a.numer()).gcd(x.b.numer());
    }
    if g.is_zero() || g.is_one() {
        return scaled;
    }
    let gq = Quad::rational(BigRational::from_integer(g.abs()));
    scaled.iter().map(|x| x * &gq.inv()).collect()
}

fn mat_vec(a: &Mat<Quad>, v: &[Quad]) -> Vec<Quad> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Quad::zero(), |acc, (x, y)| &acc + &(x * y)))
        .collect()
}

/// Jordan chains at `lambda`, longest first; each chain lists
/// `N^{s-1} w, ..., N w, w` for `N = A - lambda`.
fn chains(a: &Mat<Quad>, lambda: &Quad, sizes: &[usize]) -> Vec<Vec<Vec<Quad>>> {
    let n = a.len();
    let nm = mat_sub(a, &mat_scale(&identity(n), lambda));
    let top = sizes.first().copied().unwrap_or(0);
    let mut powers = vec![identity::<Quad>(n)];
    for k in 1..=top {
        powers.push(mat_mul(&powers[k - 1], &nm));
    }
    let kernels: Vec<Vec<Vec<Quad>>> = powers
        .iter()
        .map(|p| kernel(p).iter().map(|v| primitive_vector(v)).collect())
        .collect();
    let mut out: Vec<(usize, Vec<Quad>)> = Vec::new();
    for s in (1..=top).rev() {
        let needed = sizes.iter().filter(|&&x| x == s).count();
        if needed == 0 {
            continue;
        }
        let mut span: Vec<Vec<Quad>> = kernels[s - 1].clone();
        for (t, w) in &out {
            let mut v = w.clone();
            for _ in 0..(t - s) {
                v = mat_vec(&nm, &v);
            }
            span.push(v);
        }
        let mut r = if span.is_empty() { 0 } else { rank(&span) };
        let mut found = 0;
        for cand in &kernels[s] {
            if found == needed {
                break;
            }
            span.push(cand.clone());
            let r2 = rank(&span);
            if r2 > r {
                r = r2;
                out.push((s, cand.clone()));
                found += 1;
            } else {
                span.pop();
            }
        }
        assert_eq!(found, needed, "Jordan chain construction fell short");
    }
    out.into_iter()
        .map(|(s, w)| {
            let mut chain = vec![w];
            for _ in 1..s {
                let next = mat_vec(&nm, chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            chain
        })
        .collect()
}

pub fn jordan_basis(a: &IntMatrix) -> Result<JordanBasisData> {
    let p = jordan_profile(a)?;
    basis_from_profile(a, &p)
}

pub fn basis_from_profile(a: &IntMatrix, p: &JordanProfile) -> Result<JordanBasisData> {
    let s = &p.spectrum;
    let mut field_d = BigInt::zero();
    for e in &s.eigen {
        match &e.value {
            EigenValue::Rational(_) => {}
            EigenValue::RealQuad(q) => {
                if field_d.is_zero() {
                    field_d = q.d.clone();
                } else if field_d != q.d {
                    return Err(MonoError::unsupported(
                        "eigenvalues span more than one quadratic field; an exact Jordan basis needs Q or a single Q(sqrt d)",
                    ));
                }
            }
            EigenValue::ComplexQuad { .. } => {
                return Err(MonoError::unsupported(
                    "nonreal eigenvalue; an exact Jordan basis needs real eigenvalues in Q or Q(sqrt d)",
                ))
            }
            EigenValue::Disk(_) => {
                return Err(MonoError::unsupported(
                    "eigenvalue of degree > 2; exact Jordan data is limited to Q and real quadratic fields",
                ))
            }
        }
    }
    let aq: Mat<Quad> = a.map_entries(|x| Quad::rational(BigRational::from_integer(x.clone())));
    let n = a.n();
    let mut columns: Vec<Vec<Quad>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    // Factors by degree, then by smallest root, so diagonal matrices with
    // increasing entries give J = I.
    let mut order: Vec<usize> = (0..p.factors.len()).collect();
    let key = |fi: usize| {
        let lo = s
            .roots_of(fi)
            .iter()
            .map(|&k| s.eigen[k].exact_real().unwrap().to_f64())
            .fold(f64::INFINITY, f64::min);
        (p.factors[fi].poly.deg(), lo)
    };
    order.sort_by(|&x, &y| key(x).partial_cmp(&key(y)).unwrap());
    for fi in order {
        let fp = &p.factors[fi];
        let roots = s.roots_of(fi);
        let mut first: Option<(Quad, Vec<Vec<Vec<Quad>>>)> = None;
        for &k in &roots {
            let lambda = s.eigen[k].exact_real().expect("checked above");
            let ch = match &first {
                // The conjugate root's chains are the conjugated chains.
                Some((l0, c0)) if lambda == l0.conj() => c0
                    .iter()
                    .map(|c| c.iter().map(|v| v.iter().map(Quad::conj).collect()).collect())
                    .collect(),
                _ => chains(&aq, &lambda, &fp.blocks),
            };
            for c in &ch {
                blocks.push(JordanBlock { eigenvalue: lambda.clone(), size: c.len(), start: columns.len() });
                columns.extend(c.iter().cloned());
            }
            if first.is_none() {
                first = Some((lambda, ch));
            }
        }
    }
    let j: Mat<Quad> = (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let det_j = determinant(&j);
    if det_j.is_zero() {
        return Err(MonoError::domain("Jordan chains are linearly dependent"));
    }
    let entry_heights = j
        .iter()
        .map(|row| row.iter().map(|x| AlgebraicScalar::new(x.clone())).collect())
        .collect();
    let inv_det_height = AlgebraicScalar::new(det_j.inv());
    Ok(JordanBasisData { j, det_j, blocks, field_d, entry_heights, inv_det_height })
}
