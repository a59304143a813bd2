use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::matkit::intmatrix::{int_mat_mul, int_rank};
use crate::matkit::{spectrum, CertifiedReal, IntMatrix, IntPoly, Spectrum};

#[derive(Clone, Debug)]
pub struct FactorProfile {
    pub poly: IntPoly,
    pub multiplicity: u32,
    /// Jordan block sizes attached to each root of `poly`, largest first.
    pub blocks: Vec<usize>,
    pub has_max_modulus_root: bool,
    /// Number of roots of `poly` of modulus exactly `rho`.
    pub max_modulus_roots: usize,
}

impl FactorProfile {
    pub fn max_block(&self) -> usize {
        self.blocks.first().copied().unwrap_or(0)
    }

    pub fn blocks_of_size(&self, s: usize) -> usize {
        self.blocks.iter().filter(|&&b| b == s).count()
    }
}

#[derive(Clone, Debug)]
pub struct JordanProfile {
    pub rho: CertifiedReal,
    pub factors: Vec<FactorProfile>,
    pub l: usize,
    pub r: usize,
    pub rbar: usize,
    /// 2 when some eigenvalue of modulus `rho` is a negative real, else 1.
    pub m: u32,
    /// Whether every eigenvalue of modulus `rho` is real.
    pub dominant_real: bool,
    pub spectrum: Spectrum,
}

/// `p(A)` over the integers.
pub fn poly_at_matrix(p: &IntPoly, a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.n();
    let scalar = |c: &BigInt| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { BigInt::zero() }).collect())
            .collect()
    };
    let mut acc = scalar(&p.lc());
    for c in p.coeffs().iter().rev().skip(1) {
        acc = int_mat_mul(&acc, a.rows());
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

/// Per-root block sizes of the factor `p` of multiplicity `mult`, from
/// `dim ker p(A)^k = deg(p) * sum_i min(s_i, k)`.
fn block_sizes(p: &IntPoly, mult: u32, a: &IntMatrix) -> Vec<usize> {
    let n = a.n();
    let d = p.deg();
    let base = poly_at_matrix(p, a);
    let mut power = base.clone();
    // c[k] = sum_i min(s_i, k)
    let mut c = vec![0usize];
    loop {
        let nullity = n - int_rank(&power);
        c.push(nullity / d);
        if *c.last().unwrap() == mult as usize {
            break;
        }
        power = int_mat_mul(&power, &base);
    }
    let k_max = c.len() - 1;
    // at_least[k] = number of blocks of size >= k
    let at_least: Vec<usize> = (0..=k_max + 1)
        .map(|k| if k == 0 || k > k_max { 0 } else { c[k] - c[k - 1] })
        .collect();
    let mut blocks = Vec::new();
    for s in (1..=k_max).rev() {
        for _ in 0..(at_least[s] - at_least[s + 1]) {
            blocks.push(s);
        }
    }
    blocks
}

pub fn jordan_profile(a: &IntMatrix) -> Result<JordanProfile> {
    let s = spectrum(a)?;
    Ok(profile_from_spectrum(a, s))
}

pub fn profile_from_spectrum(a: &IntMatrix, s: Spectrum) -> JordanProfile {
    let factors: Vec<FactorProfile> = s
        .factors
        .iter()
        .enumerate()
        .map(|(i, (p, mult))| {
            let max_modulus_roots = s.dominant.iter().filter(|&&k| s.eigen[k].factor == i).count();
            FactorProfile {
                poly: p.clone(),
                multiplicity: *mult,
                blocks: block_sizes(p, *mult, a),
                has_max_modulus_root: max_modulus_roots > 0,
                max_modulus_roots,
            }
        })
        .collect();
    let top = factors
        .iter()
        .filter(|f| f.has_max_modulus_root)
        .map(FactorProfile::max_block)
        .max()
        .unwrap_or(1);
    let l = top - 1;
    let mut r = 0;
    let mut rbar = 0;
    for f in factors.iter().filter(|f| f.has_max_modulus_root) {
        let b = f.blocks_of_size(top);
        r += b * f.max_modulus_roots;
        rbar += b * f.poly.deg();
    }
    let dominant_real = s.dominant.iter().all(|&k| s.eigen[k].is_real());
    let negative = s
        .dominant
        .iter()
        .any(|&k| s.eigen[k].is_real() && s.eigen[k].real_sign() < 0);
    JordanProfile {
        rho: s.rho.clone(),
        factors,
        l,
        r,
        rbar,
        m: if negative { 2 } else { 1 },
        dominant_real,
        spectrum: s,
    }
}
