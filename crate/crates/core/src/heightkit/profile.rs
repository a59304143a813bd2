use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::point::{check_dim, PointGm};
use crate::error::Result;
use crate::matkit::IntMatrix;
use crate::numkit::primes::from_valuations;
use crate::numkit::{factor_rational, LogForm, Quad, Rat};

/// `log ||P||_v` at every place: valuation vectors at the primes in the
/// support, and `log |x_j|` as exact forms in `log p`.
///
/// Signs are carried along so the point can be rebuilt; they play no part in
/// any height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogProfile {
    /// `v_p(x_j)` for each `j`; `log ||x_j||_p = -v_p(x_j) log p`.
    pub finite: BTreeMap<BigUint, Vec<BigInt>>,
    pub arch: Vec<LogForm>,
    pub negative: Vec<bool>,
}

impl LogProfile {
    pub fn dim(&self) -> usize {
        self.negative.len()
    }

    pub fn to_point(&self) -> PointGm {
        let n = self.dim();
        let coords = (0..n)
            .map(|j| {
                let vals: BTreeMap<BigUint, i64> = self
                    .finite
                    .iter()
                    .map(|(p, v)| (p.clone(), i64::try_from(&v[j]).expect("valuation fits in i64")))
                    .collect();
                let x = from_valuations(&vals);
                if self.negative[j] {
                    -x
                } else {
                    x
                }
            })
            .collect();
        PointGm::new(coords).expect("profile of a point")
    }

    /// Whether `sum_p -v_p(x_j) log p + log|x_j|` vanishes identically for
    /// every `j`.
    pub fn product_formula_holds(&self) -> bool {
        (0..self.dim()).all(|j| {
            let mut f = self.arch[j].clone();
            for (p, v) in &self.finite {
                f.add_term(p.clone(), Quad::rational(Rat::from_integer(-&v[j])));
            }
            f.is_zero()
        })
    }

    /// Valuation vector at `p`, zero when `p` is outside the support.
    pub fn at(&self, p: &BigUint) -> Vec<BigInt> {
        self.finite.get(p).cloned().unwrap_or_else(|| vec![BigInt::zero(); self.dim()])
    }
}

// The archimedean part is determined by the valuations.
impl Hash for LogProfile {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.finite.hash(state);
        self.negative.hash(state);
    }
}

fn arch_from_finite(finite: &BTreeMap<BigUint, Vec<BigInt>>, n: usize) -> Vec<LogForm> {
    (0..n)
        .map(|j| {
            let mut f = LogForm::zero();
            for (p, v) in finite {
                f.add_term(p.clone(), Quad::rational(Rat::from_integer(v[j].clone())));
            }
            f
        })
        .collect()
}

pub fn log_profile(p: &PointGm) -> Result<LogProfile> {
    let n = p.dim();
    let mut finite: BTreeMap<BigUint, Vec<BigInt>> = BTreeMap::new();
    for (j, x) in p.coords().iter().enumerate() {
        for (q, e) in factor_rational(x)? {
            finite.entry(q).or_insert_with(|| vec![BigInt::zero(); n])[j] = BigInt::from(e);
        }
    }
    let arch = arch_from_finite(&finite, n);
    let negative = p.coords().iter().map(Signed::is_negative).collect();
    Ok(LogProfile { finite, arch, negative })
}

pub(crate) fn int_mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    m.rows()
        .iter()
        .map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (a, x)| acc + a * x))
        .collect()
}

/// `log ||phi_M(P)||_v = M log ||P||_v` at every place.
pub fn transport_profile(m: &IntMatrix, prof: &LogProfile) -> Result<LogProfile> {
    check_dim(m.n(), prof.dim())?;
    let mut finite = BTreeMap::new();
    for (p, v) in &prof.finite {
        let w = int_mat_vec(m, v);
        if w.iter().any(|x| !x.is_zero()) {
            finite.insert(p.clone(), w);
        }
    }
    let arch = m
        .rows()
        .iter()
        .map(|row| {
            row.iter().zip(&prof.arch).fold(LogForm::zero(), |acc, (a, f)| {
                acc.add(&f.scale(&Quad::rational(Rat::from_integer(a.clone()))))
            })
        })
        .collect();
    // sign(prod x_j^{a_ij}) = prod sign(x_j)^{a_ij}
    let negative = m
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&prof.negative)
                .filter(|(a, &neg)| neg && a.is_odd())
                .count()
                % 2
                == 1
        })
        .collect();
    Ok(LogProfile { finite, arch, negative })
}

/// `max(0, u_1, ..., u_N)` over exact forms.
pub(crate) fn max_plus(forms: impl IntoIterator<Item = LogForm>) -> LogForm {
    forms.into_iter().fold(LogForm::zero(), |acc, f| acc.max_exact(&f))
}

/// Finite-place contribution `sum_p max(0, max_j -v_p(x_j)) log p`.
fn finite_height(finite: &BTreeMap<BigUint, Vec<BigInt>>) -> LogForm {
    let mut h = LogForm::zero();
    for (p, v) in finite {
        let worst = v.iter().map(|x| -x).max().unwrap_or_default();
        if worst.is_positive() {
            h.add_term(p.clone(), Quad::rational(Rat::from_integer(worst)));
        }
    }
    h
}

/// `h(P) = sum_v max^+(log ||P||_v)`, the height of `(1 : x_1 : ... : x_N)`.
pub fn weil_height(prof: &LogProfile) -> LogForm {
    finite_height(&prof.finite).add(&max_plus(prof.arch.iter().cloned()))
}

/// Height from valuations alone; the archimedean part is rebuilt from them.
pub(crate) fn height_of_valuations(finite: &BTreeMap<BigUint, Vec<BigInt>>, n: usize) -> LogForm {
    finite_height(finite).add(&max_plus(arch_from_finite(finite, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heightkit::point::eval_monomial;

    fn pt(s: &str) -> PointGm {
        PointGm::parse(s).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lp(p: u32) -> LogForm {
        LogForm::log_prime(BigUint::from(p))
    }

    #[test]
    fn profiles() {
        let p = log_profile(&pt("2,3")).unwrap();
        assert_eq!(p.finite[&BigUint::from(2u32)], bi(&[1, 0]));
        assert_eq!(p.finite[&BigUint::from(3u32)], bi(&[0, 1]));
        assert_eq!(p.arch, vec![lp(2), lp(3)]);
        let p = log_profile(&pt("1,1")).unwrap();
        assert!(p.finite.is_empty());
        assert_eq!(p.arch, vec![LogForm::zero(), LogForm::zero()]);
        let p = log_profile(&pt("4/9,6")).unwrap();
        assert_eq!(p.finite[&BigUint::from(2u32)], bi(&[2, 1]));
        assert_eq!(p.finite[&BigUint::from(3u32)], bi(&[-2, 1]));
        assert!(p.product_formula_holds());
        assert_eq!(p.to_point(), pt("4/9,6"));
    }

    #[test]
    fn transport_matches_evaluation() {
        let p = pt("2,-3");
        for rows in [[[1, 0], [0, 1]], [[2, 0], [0, 2]], [[1, 1], [1, 0]], [[-1, 2], [3, -1]]] {
            let a = IntMatrix::from_i64(&[&rows[0], &rows[1]]).unwrap();
            let via = transport_profile(&a, &log_profile(&p).unwrap()).unwrap();
            assert_eq!(via, log_profile(&eval_monomial(&a, &p).unwrap()).unwrap());
        }
    }

    #[test]
    fn heights() {
        assert_eq!(weil_height(&log_profile(&pt("2,3")).unwrap()), lp(3));
        assert!(weil_height(&log_profile(&pt("1,-1")).unwrap()).is_zero());
        assert_eq!(weil_height(&log_profile(&pt("1/2,1")).unwrap()), lp(2));
        // (1 : 4/9 : 6) = (9 : 4 : 54): log 54
        let h = weil_height(&log_profile(&pt("4/9,6")).unwrap());
        assert_eq!(h, lp(2).add(&lp(3).scale(&Quad::from_int(3))));
    }
}
