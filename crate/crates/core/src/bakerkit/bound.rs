use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::linear_forms::{c11, c11_log_form};
use crate::error::{MonoError, Result};
use crate::heightkit::{canonical_height_closed, classify_orbit, log_profile, weil_height, OrbitVerdict, PointGm};
use crate::heightkit::DEFAULT_ORBIT_BUDGET;
use crate::jordankit::{basis_from_profile, jordan_profile};
use crate::matkit::{CertifiedReal, IntMatrix};
use crate::numkit::elementary::{exp, ln, ln_biguint, ln_factorial};
use crate::numkit::{Dyadic, Interval, LogForm, NegLogScalar, Quad, Rat};

/// The point before and after multiplying every coordinate by the lcm of the
/// denominators.
#[derive(Clone, Debug)]
pub struct PointClearing {
    pub original: PointGm,
    pub cleared: PointGm,
    pub factor: BigInt,
    pub h_original: LogForm,
    pub h_cleared: LogForm,
}

pub fn clear_point(p: &PointGm) -> Result<PointClearing> {
    let mut l = BigInt::one();
    for x in p.coords() {
        l = l.lcm(x.denom());
    }
    let lq = Rat::from_integer(l.clone());
    let cleared = PointGm::new(p.coords().iter().map(|x| x * &lq).collect())?;
    Ok(PointClearing {
        h_original: weil_height(&log_profile(p)?),
        h_cleared: weil_height(&log_profile(&cleared)?),
        original: p.clone(),
        cleared,
        factor: l,
    })
}

/// Everything the constants depend on.
#[derive(Clone, Debug)]
pub struct BakerInputs {
    pub n: usize,
    pub k_degree: u32,
    /// `h(P)` used: the larger of the original and cleared heights.
    pub h: Interval,
    pub h_k: Interval,
    pub r: usize,
    pub l: usize,
    pub rho: CertifiedReal,
    /// `log(max H(a) H(1/det J))`.
    pub log_c_a: Interval,
    pub t0: Vec<BigUint>,
    pub clearing: Option<PointClearing>,
    pub prec: u32,
}

impl BakerInputs {
    /// `N h_K(P)`.
    pub fn nh(&self) -> Interval {
        self.h_k.mul_int(self.n as i64)
    }

    /// `ceil(c + N h_K)`, taken from the upper endpoint.
    pub fn ceil_plus(&self, c: i64) -> u64 {
        let hi = (&self.nh() + &Interval::from_int(c, self.prec)).hi().to_rational();
        let q = hi.ceil().to_integer();
        q.to_u64().expect("N h_K fits in u64")
    }

    /// `log(rho^l l!)`.
    pub fn log_rho_l_fact(&self) -> Interval {
        let wp = self.prec + 32;
        let lr = ln(&self.rho.interval(wp)).mul_int(self.l as i64);
        (&lr + &ln_factorial(self.l as u64, wp)).with_precision(self.prec)
    }
}

/// The constants `A'`, `E'`, `D'` and `C`, in log space.
#[derive(Clone, Debug)]
pub struct BakerConstants {
    /// `ceil(4 + N h_K)`: the argument of C11 and the power of `log A'`.
    pub n_star: u64,
    pub log_a_prime: Interval,
    pub log_e_prime: Interval,
    pub log_d_prime: Interval,
    /// `l` that enters the `rho^l l!` prefactor.
    pub l: usize,
    pub c: NegLogScalar,
}

impl BakerConstants {
    pub fn log10_neg_log_c(&self) -> Interval {
        self.c.log10_neg_log()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub name: &'static str,
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct BakerBound {
    pub inputs: BakerInputs,
    /// Variant for a nontrivial maximal Jordan block (`l >= 1`).
    pub jordan_block: Option<BakerConstants>,
    /// Variant for an irreducible characteristic polynomial.
    pub irreducible: Option<BakerConstants>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub notes: Vec<String>,
}

impl BakerBound {
    pub fn constants(&self) -> &BakerConstants {
        self.jordan_block.as_ref().or(self.irreducible.as_ref()).expect("one variant applies")
    }
}

fn finite_places(p: &PointGm) -> Result<Vec<BigUint>> {
    Ok(log_profile(p)?
        .finite
        .iter()
        .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
        .map(|(p, _)| p.clone())
        .collect())
}

fn check_rho(rho: &CertifiedReal, prec: u32) -> Result<()> {
    let one = CertifiedReal::from_exact(Quad::one(), prec);
    match rho.compare(&one) {
        Some(std::cmp::Ordering::Greater) => Ok(()),
        Some(_) => Err(MonoError::domain("rho ≤ 1")),
        None => Err(MonoError::IndistinguishableModuli { first: "rho".into(), second: "1".into() }),
    }
}

/// Inputs from the matrix and the point.
pub fn baker_inputs(a: &IntMatrix, p: &PointGm, prec: u32) -> Result<(BakerInputs, bool)> {
    crate::heightkit::point::check_dim(a.n(), p.dim())?;
    let prof = jordan_profile(a)?;
    check_rho(&prof.rho, prec)?;
    let basis = basis_from_profile(a, &prof)?;
    let clearing = clear_point(p)?;
    let wp = prec + 32;
    let h = clearing.h_original.to_interval(wp).max(&clearing.h_cleared.to_interval(wp));
    let k_degree: u32 = if basis.field_d.is_zero() { 1 } else { 2 };
    let irreducible = prof.spectrum.factors.len() == 1 && prof.spectrum.factors[0].1 == 1;
    let inputs = BakerInputs {
        n: a.n(),
        k_degree,
        h_k: h.mul_int(k_degree as i64).with_precision(prec),
        h: h.with_precision(prec),
        r: prof.r,
        l: prof.l,
        rho: prof.rho.clone(),
        log_c_a: basis.log_c_a(wp).with_precision(prec),
        t0: finite_places(&clearing.cleared)?,
        clearing: Some(clearing),
        prec,
    };
    Ok((inputs, irreducible))
}

/// `neg_log C = log(2 rho^l l!) + E' (log A')^n* (log D' + log log A')`.
pub fn constants_from_inputs(inp: &BakerInputs, l: usize) -> Result<BakerConstants> {
    let prec = inp.prec;
    let wp = prec + 64;
    let nh = inp.nh().with_precision(wp);
    let n_star = inp.ceil_plus(4);
    let e6 = inp.ceil_plus(6);
    let kq = inp.k_degree as i64;

    let log_a_prime = &(&(&nh + &Interval::from_int(2, wp)) * &(&nh + &Interval::from_int(4, wp))).mul_int(12);
    let log_kq = ln_biguint(&BigUint::from(inp.k_degree), wp);
    let log_e_prime = &c11_log_form(n_star)?.to_interval(wp) + &log_kq.mul_int(e6 as i64);

    let n = inp.n as i64;
    let r = inp.r as i64;
    // log of 4 N r [K:Q] (3 + N h_K) (N-1)! C(A)
    let inner = &(&(&ln_biguint(&BigUint::from((4 * n * r * kq) as u64), wp)
        + &ln(&(&nh + &Interval::from_int(3, wp))))
        + &ln_factorial((n - 1) as u64, wp))
        + &inp.log_c_a.with_precision(wp);
    let log_d_prime = inner.mul_int(2 * n * n * r * kq * kq);

    let with_l = BakerInputs { l, ..inp.clone() };
    let prefactor = &with_l.log_rho_l_fact().with_precision(wp) + &ln_biguint(&BigUint::from(2u32), wp);
    let e_prime = c11(n_star)? * num_traits::pow(BigInt::from(kq), e6 as usize);
    let body = &(&Interval::from_bigint(&e_prime, wp) * &log_a_prime.pow_u(n_star)) * &(&log_d_prime + &ln(log_a_prime));
    let neg_log = &prefactor + &body;
    if !neg_log.is_positive() {
        return Err(MonoError::domain("constant is not below 1"));
    }
    Ok(BakerConstants {
        n_star,
        log_a_prime: log_a_prime.with_precision(prec),
        log_e_prime: log_e_prime.with_precision(prec),
        log_d_prime: log_d_prime.with_precision(prec),
        l,
        c: NegLogScalar::from_neg_log(neg_log.with_precision(prec)),
    })
}

/// Effective lower bound `C` for the canonical height of `P` under `A`.
pub fn baker_bound(a: &IntMatrix, p: &PointGm, prec: u32) -> Result<BakerBound> {
    let (inputs, irreducible) = baker_inputs(a, p, prec)?;
    let jordan_applies = inputs.l >= 1;
    if !jordan_applies && !irreducible {
        return Err(MonoError::unsupported(
            "l(A) = 0 and the characteristic polynomial is reducible; neither the Jordan-block bound nor the irreducible variant applies",
        ));
    }
    let jordan_block = if jordan_applies { Some(constants_from_inputs(&inputs, inputs.l)?) } else { None };
    let irreducible_c = if irreducible { Some(constants_from_inputs(&inputs, 0)?) } else { None };

    let mut hyp = Vec::new();
    hyp.push(HypothesisCheck { name: "rho_gt_1", holds: Some(true), detail: format!("rho = {}", rho_text(&inputs.rho)) });
    hyp.push(HypothesisCheck {
        name: "real_eigenvalues",
        holds: Some(true),
        detail: "Jordan basis over Q or a real quadratic field".into(),
    });
    hyp.push(HypothesisCheck { name: "l_ge_1", holds: Some(jordan_applies), detail: format!("l = {}", inputs.l) });
    hyp.push(HypothesisCheck {
        name: "charpoly_irreducible",
        holds: Some(irreducible),
        detail: String::new(),
    });
    let t0_bound = &Interval::from_int(4, prec) + &inputs.nh();
    let t0_len = Interval::from_int(inputs.t0.len() as i64, prec);
    hyp.push(HypothesisCheck {
        name: "t0_bound",
        holds: Some(!t0_bound.certainly_lt(&t0_len)),
        detail: format!("#T0 = {} <= 4 + N h_K = {}", inputs.t0.len(), t0_bound.to_decimal(12)),
    });
    let verdict = classify_orbit(std::slice::from_ref(a), p, DEFAULT_ORBIT_BUDGET)?;
    hyp.push(HypothesisCheck {
        name: "orbit_infinite",
        holds: match verdict {
            OrbitVerdict::Infinite(_) => Some(true),
            OrbitVerdict::Finite { .. } => Some(false),
            OrbitVerdict::Unknown { .. } => None,
        },
        detail: verdict.status().into(),
    });
    let mut notes = vec![
        "the classical bound displays U with a leading minus sign against |Lambda| >= e^(-U); U is used as a positive magnitude".to_string(),
        "ceil(4 + N h_K) and ceil(6 + N h_K) are used where an integer is required".to_string(),
    ];
    if let Some(c) = &inputs.clearing {
        if c.h_original != c.h_cleared {
            notes.push(format!(
                "clearing denominators by {} changes h(P) from {} to {}; the larger value is used",
                c.factor,
                c.h_original.to_interval(prec).to_decimal(12),
                c.h_cleared.to_interval(prec).to_decimal(12)
            ));
        }
    }
    if let Ok(ch) = canonical_height_closed(a, p, 1e-12) {
        let best = jordan_block.as_ref().or(irreducible_c.as_ref()).unwrap();
        if ch.is_certainly_positive() {
            let margin = best.c.log_margin_below(&ch.value);
            hyp.push(HypothesisCheck {
                name: "height_exceeds_c",
                holds: Some(margin.is_positive()),
                detail: format!("log h - log C = {}", margin.to_decimal(6)),
            });
        } else if ch.is_zero() {
            hyp.push(HypothesisCheck {
                name: "height_exceeds_c",
                holds: Some(false),
                detail: "canonical height is 0; the orbit is not dense".into(),
            });
        }
    }
    Ok(BakerBound { inputs, jordan_block, irreducible: irreducible_c, hypotheses: hyp, notes })
}

fn rho_text(rho: &CertifiedReal) -> String {
    match &rho.exact {
        Some(q) => q.to_string(),
        None => rho.enclosure.to_decimal(20),
    }
}

/// Closed form of the tower-shaped constant, double-log aware.
#[derive(Clone, Debug)]
pub struct TowerConstant {
    pub c: NegLogScalar,
    /// `log(-log C)`.
    pub log_neg_log: Interval,
}

/// `neg_log C = log(2 rho^l l!) + X^Y log Z` with
/// `X = C1 [K:Q]^2 16 N^2 r (4 + N h_K)`, `Y = 10 (6 + N h_K)` and
/// `Z = (4 + N h_K) C(A) 4 N r [K:Q] (N-1)!`.
pub fn tower_from_inputs(inp: &BakerInputs, c1: f64) -> Result<TowerConstant> {
    if !(c1 > 0.0) || !c1.is_finite() {
        return Err(MonoError::domain("C1 must be a positive finite number"));
    }
    let prec = inp.prec;
    let wp = prec + 64;
    let nh = inp.nh().with_precision(wp);
    let four = &nh + &Interval::from_int(4, wp);
    let n = inp.n as i64;
    let r = inp.r as i64;
    let kq = inp.k_degree as i64;
    let c1i = Interval::point(Dyadic::from_f64(c1), wp);
    let x = &c1i.mul_int(kq * kq * 16 * n * n * r) * &four;
    let y = (&nh + &Interval::from_int(6, wp)).mul_int(10);
    let log_z = &(&(&ln(&four) + &inp.log_c_a.with_precision(wp))
        + &ln_biguint(&BigUint::from((4 * n * r * kq) as u64), wp))
        + &ln_factorial((n - 1) as u64, wp);
    if !log_z.is_positive() {
        return Err(MonoError::domain("tower base is not above 1"));
    }
    let log_x = ln(&x);
    let t = &(&y * &log_x) + &ln(&log_z);
    let prefactor = &inp.log_rho_l_fact().with_precision(wp) + &ln_biguint(&BigUint::from(2u32), wp);
    let neg_log = &prefactor + &exp(&t);
    // log(pre + e^t) = t + log(1 + pre e^-t)
    let log_neg_log = &t + &ln(&(&Interval::one(wp) + &(&prefactor * &exp(&-&t))));
    Ok(TowerConstant {
        c: NegLogScalar::from_neg_log(neg_log.with_precision(prec)),
        log_neg_log: log_neg_log.with_precision(prec),
    })
}

pub fn tower_constant(a: &IntMatrix, p: &PointGm, c1: f64, prec: u32) -> Result<TowerConstant> {
    let (inputs, irreducible) = baker_inputs(a, p, prec)?;
    if inputs.l == 0 && !irreducible {
        return Err(MonoError::unsupported(
            "l(A) = 0 and the characteristic polynomial is reducible; the tower constant does not apply",
        ));
    }
    tower_from_inputs(&inputs, c1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bakerkit::c11;

    const P: u32 = 128;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    fn jordan2() -> IntMatrix {
        m(&[&[2, 1], &[0, 2]])
    }

    #[test]
    fn unipotent_rejected() {
        let err = baker_bound(&m(&[&[1, 1], &[0, 1]]), &PointGm::ints(&[2, 3]).unwrap(), P).unwrap_err();
        assert_eq!(err, MonoError::domain("rho ≤ 1"));
    }

    #[test]
    fn diagonal_has_no_variant() {
        let err = baker_bound(&m(&[&[2, 0], &[0, 3]]), &PointGm::ints(&[2, 3]).unwrap(), P).unwrap_err();
        assert_eq!(err.kind(), "unsupported");
    }

    #[test]
    fn jordan_block_plug_in() {
        let b = baker_bound(&jordan2(), &PointGm::ints(&[2, 3]).unwrap(), P).unwrap();
        let i = &b.inputs;
        assert_eq!((i.n, i.k_degree, i.r, i.l), (2, 1, 1, 1));
        assert!(b.irreducible.is_none());
        let c = b.jordan_block.as_ref().unwrap();
        assert_eq!(c.n_star, 7);
        // independent recomputation in f64
        let l3 = 3f64.ln();
        let nh = 2.0 * l3;
        assert!((c.log_a_prime.to_f64() - (2.0 + nh) * 12.0 * (4.0 + nh)).abs() < 1e-10);
        let le = 109.0 * 2f64.ln() + 14.0 * 7f64.ln();
        assert!((c.log_e_prime.to_f64() - le).abs() < 1e-10);
        assert!(c.log_e_prime.overlaps(&ln(&Interval::from_bigint(&c11(7).unwrap(), P))));
        let ld = 8.0 * (8.0 * (3.0 + nh)).ln();
        assert!((c.log_d_prime.to_f64() - ld).abs() < 1e-10);
        let la = (2.0 + nh) * 12.0 * (4.0 + nh);
        let neg = (2.0 * 2.0f64).ln() + le.exp() * la.powi(7) * (ld + la.ln());
        assert!((c.c.neg_log().to_f64() / neg - 1.0).abs() < 1e-12);
        assert!(b.hypotheses.iter().all(|h| h.name == "charpoly_irreducible" || h.holds == Some(true)));
    }

    #[test]
    fn irreducible_variant() {
        let b = baker_bound(&m(&[&[1, 1], &[1, 0]]), &PointGm::ints(&[2, 3]).unwrap(), P).unwrap();
        assert!(b.jordan_block.is_none());
        let c = b.irreducible.as_ref().unwrap();
        assert_eq!(b.inputs.k_degree, 2);
        assert_eq!(c.l, 0);
        let above = b.hypotheses.iter().find(|h| h.name == "height_exceeds_c").unwrap();
        assert_eq!(above.holds, Some(true));
    }

    #[test]
    fn clearing() {
        let p = PointGm::from_i64(&[(1, 2), (1, 3)]).unwrap();
        let c = clear_point(&p).unwrap();
        assert_eq!(c.cleared, PointGm::ints(&[3, 2]).unwrap());
        assert_eq!(c.factor, BigInt::from(6));
        // h(1/2, 1/3) = log 6 but h(3, 2) = log 3
        assert!((c.h_original.to_f64() - 6f64.ln()).abs() < 1e-14);
        assert!((c.h_cleared.to_f64() - 3f64.ln()).abs() < 1e-14);
        let b = baker_bound(&jordan2(), &p, P).unwrap();
        assert!(b.notes.iter().any(|n| n.contains("clearing")));
        assert!((b.inputs.h.to_f64() - 6f64.ln()).abs() < 1e-14);
        assert_eq!(b.inputs.t0, vec![BigUint::from(2u32), BigUint::from(3u32)]);
    }

    #[test]
    fn monotone_in_height() {
        let mut last: Option<Interval> = None;
        for k in 1..=10u32 {
            let p = PointGm::new(vec![Rat::from_integer(BigInt::from(2).pow(k)), Rat::from_integer(3.into())]).unwrap();
            let c = baker_bound(&jordan2(), &p, P).unwrap();
            let v = c.constants().log10_neg_log_c();
            if let Some(prev) = &last {
                assert!(prev.certainly_lt(&v));
            }
            last = Some(v);
        }
    }

    #[test]
    fn tower() {
        let p = PointGm::ints(&[2, 3]).unwrap();
        let t = tower_constant(&jordan2(), &p, 1.0, P).unwrap();
        let nh = 2.0 * 3f64.ln();
        let x = 16.0 * 4.0 * (4.0 + nh);
        let y = 10.0 * (6.0 + nh);
        let z = (4.0 + nh) * 8.0;
        let expect = y * x.ln() + z.ln().ln();
        assert!((t.log_neg_log.to_f64() - expect).abs() < 1e-9);
        let t2 = tower_constant(&jordan2(), &PointGm::ints(&[4, 3]).unwrap(), 1.0, P).unwrap();
        assert!(t.log_neg_log.certainly_lt(&t2.log_neg_log));
        assert!(tower_constant(&jordan2(), &p, 0.0, P).is_err());
    }
}
