use num_traits::{Signed, ToPrimitive};

use super::point::{check_dim, PointGm};
use super::profile::{log_profile, max_plus, LogProfile};
use crate::error::{MonoError, Result};
use crate::jordankit::{limit_matrix_b, LimitMatrixB};
use crate::matkit::IntMatrix;
use crate::numkit::elementary::ln_biguint;
use crate::numkit::{Interval, LogForm, Quad, Rat};

#[derive(Clone, Debug)]
pub struct CanonicalHeight {
    pub value: Interval,
    /// Present when every entry of `B` is rational or quadratic.
    pub exact: Option<LogForm>,
    pub limit: LimitMatrixB,
}

impl CanonicalHeight {
    /// Exact zero, or an enclosure that is the single point 0.
    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(f) => f.is_zero(),
            None => self.value.is_point() && self.value.lo().is_zero(),
        }
    }

    pub fn is_certainly_positive(&self) -> bool {
        match &self.exact {
            Some(f) => f.signum() > 0,
            None => self.value.is_positive(),
        }
    }
}

fn bits_for(tol: f64) -> u32 {
    if tol > 0.0 {
        (-tol.log2()).ceil().max(0.0) as u32
    } else {
        200
    }
}

/// Rough size of `sum_v sum_j |log ||x_j||_v|`, to scale the tolerance on B.
fn profile_mass(prof: &LogProfile) -> f64 {
    let mut s = 0.0;
    for (p, v) in &prof.finite {
        let lp = (p.bits() as f64) * std::f64::consts::LN_2;
        s += 2.0 * v.iter().map(|x| x.abs().to_f64().unwrap_or(f64::MAX)).sum::<f64>() * lp;
    }
    s
}

/// `sum_v max^+(B log ||P||_v)`.
pub fn canonical_height_closed(a: &IntMatrix, p: &PointGm, tol: f64) -> Result<CanonicalHeight> {
    check_dim(a.n(), p.dim())?;
    let prof = log_profile(p)?;
    let scale = 1.0 + profile_mass(&prof);
    let mut tol_b = tol / (4.0 * scale);
    for _ in 0..4 {
        let b = limit_matrix_b(a, tol_b)?;
        let h = closed_from_limit(b, &prof, tol)?;
        if h.exact.is_some() || h.value.width().to_f64() <= tol {
            return Ok(h);
        }
        tol_b /= 2f64.powi(32);
    }
    Err(MonoError::budget("canonical height enclosure did not reach the tolerance"))
}

pub fn closed_from_limit(b: LimitMatrixB, prof: &LogProfile, tol: f64) -> Result<CanonicalHeight> {
    check_dim(b.n(), prof.dim())?;
    let prec = (bits_for(tol) + 64).max(128);
    if let Some(bq) = b.exact_entries() {
        let exact = closed_exact(&bq, prof);
        return Ok(CanonicalHeight { value: exact.to_interval(prec), exact: Some(exact), limit: b });
    }
    let bi = b.intervals(prec);
    let mut total = Interval::zero(prec);
    for (p, v) in &prof.finite {
        let lp = ln_biguint(p, prec);
        let local = bi.iter().map(|row| {
            row.iter().zip(v).fold(Interval::zero(prec), |acc, (e, x)| {
                &acc + &(e * &Interval::from_bigint(&-x, prec))
            })
        });
        let m = local.fold(Interval::zero(prec), |acc, w| acc.max(&w));
        total = &total + &(&m * &lp);
    }
    let arch: Vec<Interval> = prof.arch.iter().map(|f| f.to_interval(prec)).collect();
    let local = bi
        .iter()
        .map(|row| row.iter().zip(&arch).fold(Interval::zero(prec), |acc, (e, x)| &acc + &(e * x)));
    total = &total + &local.fold(Interval::zero(prec), |acc, w| acc.max(&w));
    Ok(CanonicalHeight { value: total, exact: None, limit: b })
}

fn closed_exact(b: &[Vec<Quad>], prof: &LogProfile) -> LogForm {
    let mut total = LogForm::zero();
    for (p, v) in &prof.finite {
        let u: Vec<Quad> = v.iter().map(|x| Quad::rational(Rat::from_integer(-x))).collect();
        let best = b
            .iter()
            .map(|row| row.iter().zip(&u).fold(Quad::zero(), |acc, (e, x)| &acc + &(e * x)))
            .fold(Quad::zero(), |acc, w| if w > acc { w } else { acc });
        total.add_term(p.clone(), best);
    }
    let arch = b.iter().map(|row| {
        row.iter().zip(&prof.arch).fold(LogForm::zero(), |acc, (e, f)| acc.add(&f.scale(e)))
    });
    total.add(&max_plus(arch))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rat;
    use num_bigint::{BigInt, BigUint};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    fn lp(p: u32) -> LogForm {
        LogForm::log_prime(BigUint::from(p))
    }

    #[test]
    fn closed_forms() {
        let p = PointGm::ints(&[2, 3]).unwrap();
        let h = canonical_height_closed(&m(&[&[2, 0], &[0, 3]]), &p, 1e-12).unwrap();
        assert_eq!(h.exact.unwrap(), lp(3));
        let h = canonical_height_closed(&m(&[&[1, 1], &[0, 1]]), &p, 1e-12).unwrap();
        assert_eq!(h.exact.unwrap(), lp(3));
        let h = canonical_height_closed(&m(&[&[1, 1], &[1, 0]]), &p, 1e-12).unwrap();
        // B (log 2, log 3) = (1/sqrt5) (phi log 2 + log 3, log 2 + log 3 / phi)
        let five = BigInt::from(5);
        let want = lp(2)
            .scale(&Quad::new(rat(1, 2), rat(1, 10), &five))
            .add(&lp(3).scale(&Quad::new(rat(0, 1), rat(1, 5), &five)));
        assert_eq!(h.exact.clone().unwrap(), want);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let f = (phi * 2f64.ln() + 3f64.ln()) / 5f64.sqrt();
        assert!((h.value.to_f64() - f).abs() < 1e-14);
    }

    #[test]
    fn torsion_points_have_height_zero() {
        let p = PointGm::ints(&[1, -1]).unwrap();
        let h = canonical_height_closed(&m(&[&[1, 1], &[1, 0]]), &p, 1e-12).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn inexact_limit_matrix() {
        // x^3 - 3x - 1 companion; compare with the iterate h(A^n P) / rho^n
        let a = m(&[&[0, 0, 1], &[1, 0, 3], &[0, 1, 0]]);
        let p = PointGm::ints(&[2, 3, 5]).unwrap();
        let h = canonical_height_closed(&a, &p, 1e-12).unwrap();
        assert!(h.exact.is_none());
        assert!(h.value.width().to_f64() <= 1e-12);
        let prof = log_profile(&p).unwrap();
        let mut q = prof.clone();
        let n = 150;
        for _ in 0..n {
            q = super::super::profile::transport_profile(&a, &q).unwrap();
        }
        let hn = super::super::profile::weil_height(&q).to_f64();
        let rho = h.limit.rho.to_f64();
        assert!((hn / rho.powi(n) - h.value.to_f64()).abs() < 1e-9, "{} vs {}", hn / rho.powi(n), h.value.to_f64());
    }
}
