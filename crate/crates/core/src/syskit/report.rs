use super::star::{certify_star, degree_l_heuristic, l_f_estimate, LEstimate, StarCertificate};
use super::system::{growth_table, GrowthTable, SystemF, DEFAULT_WORD_BUDGET};
use crate::heightkit::{
    canonical_height_closed, canonical_height_truncated, classify_orbit, CanonicalHeight, Normalization, Normalizer,
    OrbitVerdict, PointGm, TruncatedEstimate, DEFAULT_ORBIT_BUDGET,
};
use crate::jordankit::jordan_profile;
use crate::matkit::{charpoly, factor_over_q, CertifiedReal};
use crate::numkit::{Interval, DEFAULT_PRECISION};

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub n_max: usize,
    pub word_budget: u64,
    pub tol: f64,
    pub orbit_budget: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { n_max: 12, word_budget: DEFAULT_WORD_BUDGET, tol: 1e-12, orbit_budget: DEFAULT_ORBIT_BUDGET }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightStatus {
    Zero,
    /// Below the tolerance but not proven zero.
    ApproximatelyZero,
    Positive,
    Undetermined,
}

impl HeightStatus {
    pub fn name(self) -> &'static str {
        match self {
            HeightStatus::Zero => "zero",
            HeightStatus::ApproximatelyZero => "approximately_zero",
            HeightStatus::Positive => "positive",
            HeightStatus::Undetermined => "undetermined",
        }
    }

    pub fn is_zeroish(self) -> bool {
        matches!(self, HeightStatus::Zero | HeightStatus::ApproximatelyZero)
    }
}

/// Points of canonical height zero lie in the divisible hull of an algebraic
/// subgroup of dimension at least `N - rbar(psi)`.
#[derive(Clone, Debug)]
pub struct SubgroupBound {
    pub dim_lower_bound: usize,
    pub rbar: usize,
    /// The orbit then sits in a proper subgroup and is not Zariski dense.
    pub orbit_not_dense: bool,
    pub statement: String,
}

/// With `psi` of irreducible characteristic polynomial and `delta > k`,
/// height zero is equivalent to a finite orbit.
#[derive(Clone, Debug)]
pub struct FinitenessCriterion {
    pub applies: bool,
    pub reason: String,
    pub expected_finite: Option<bool>,
    pub consistent_with_orbit: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct SystemReport {
    pub k: usize,
    pub dim: usize,
    pub table: Option<GrowthTable>,
    pub delta_enclosure: Option<Interval>,
    pub delta_exact: Option<CertifiedReal>,
    pub star: StarCertificate,
    pub l: Option<LEstimate>,
    pub height_steps: usize,
    pub averaged: Option<TruncatedEstimate>,
    pub summed: Option<TruncatedEstimate>,
    pub psi_height: Option<CanonicalHeight>,
    pub height_status: HeightStatus,
    pub orbit: OrbitVerdict,
    pub subgroup_bound: Option<SubgroupBound>,
    pub finiteness: FinitenessCriterion,
    pub notes: Vec<String>,
}

fn height_steps(k: usize, n_max: usize, budget: u64) -> usize {
    let mut n = n_max.max(1);
    while n > 1 && (k as u64).checked_pow(n as u32).is_none_or(|w| w > budget) {
        n -= 1;
    }
    n
}

pub fn system_report(sys: &SystemF, p: &PointGm, opts: &ReportOptions) -> SystemReport {
    let mut notes = Vec::new();
    let k = sys.k();
    let dim = sys.dim();
    if p.dim() != dim {
        notes.push(format!("point has {} coordinates but the system acts on dimension {dim}", p.dim()));
    }
    let levels = sys.max_levels(opts.n_max, opts.word_budget);
    if levels < opts.n_max {
        notes.push(format!("growth table truncated to n = {levels} by the word budget"));
    }
    let table = if levels == 0 {
        None
    } else {
        growth_table(sys, levels, opts.word_budget)
            .map_err(|e| notes.push(format!("growth table: {e}")))
            .ok()
    };
    let star = certify_star(sys, levels.max(1), opts.word_budget);
    let delta_exact = star.certified_delta().cloned();
    let delta_enclosure = table.as_ref().map(GrowthTable::enclosure);
    let l = table.as_ref().and_then(|t| {
        l_f_estimate(sys, t, &star).map_err(|e| notes.push(format!("correction exponent: {e}"))).ok()
    });
    let psi = star.psi_matrix(sys).filter(|_| star.status.is_certified());

    // normalizer: exact for a certified psi, otherwise the lower bound and
    // the heuristic exponent
    let norm = match (&delta_exact, &table) {
        (Some(d), _) => Some(Normalizer { delta: d.interval(DEFAULT_PRECISION), l: l.as_ref().and_then(|x| x.l).unwrap_or(0) }),
        (None, Some(t)) => Some(Normalizer {
            delta: t.lower.clone(),
            l: degree_l_heuristic(t, t.lower.to_f64(), dim).unwrap_or(0),
        }),
        _ => None,
    };
    let steps = height_steps(k, opts.n_max, opts.word_budget);
    let mut estimate = |normalization| {
        let norm = norm.as_ref()?;
        canonical_height_truncated(sys.matrices(), p, steps, normalization, norm, opts.word_budget)
            .map_err(|e| notes.push(format!("{} estimator: {e}", normalization.name())))
            .ok()
    };
    let averaged = estimate(Normalization::Averaged);
    let summed = estimate(Normalization::Summed);
    let psi_height = psi.as_ref().and_then(|a| {
        canonical_height_closed(a, p, opts.tol).map_err(|e| notes.push(format!("closed form for psi: {e}"))).ok()
    });

    let height_status = if let (1, Some(h)) = (k, &psi_height) {
        if h.is_zero() {
            HeightStatus::Zero
        } else if h.is_certainly_positive() {
            HeightStatus::Positive
        } else if h.value.hi().to_f64() < opts.tol {
            HeightStatus::ApproximatelyZero
        } else {
            HeightStatus::Undetermined
        }
    } else if let Some(e) = &summed {
        if e.identically_zero_from(1) {
            HeightStatus::Zero
        } else if psi_height.as_ref().is_some_and(CanonicalHeight::is_certainly_positive) {
            // height zero for the system would force height zero for psi
            HeightStatus::Positive
        } else if e.estimate.hi().to_f64() < opts.tol {
            HeightStatus::ApproximatelyZero
        } else if e.estimate.lo().to_f64() > opts.tol {
            HeightStatus::Positive
        } else {
            HeightStatus::Undetermined
        }
    } else {
        HeightStatus::Undetermined
    };

    let orbit = classify_orbit(sys.matrices(), p, opts.orbit_budget).unwrap_or_else(|e| {
        notes.push(format!("orbit classification: {e}"));
        OrbitVerdict::Unknown { explored: 0 }
    });

    let delta_gt = |x: i64| match &delta_exact {
        Some(d) => match &d.exact {
            Some(q) => *q > crate::numkit::Quad::from_int(x),
            None => d.enclosure.lo().to_f64() > x as f64,
        },
        None => false,
    };

    let subgroup_bound = match (&psi, height_status.is_zeroish() && delta_gt(1)) {
        (Some(a), true) => match jordan_profile(a) {
            Ok(jp) => {
                let d = dim - jp.rbar;
                Some(SubgroupBound {
                    dim_lower_bound: d,
                    rbar: jp.rbar,
                    orbit_not_dense: true,
                    statement: format!(
                        "points of canonical height zero lie in the divisible hull of an algebraic subgroup G with dim G >= {dim} - {} = {d}; the orbit lies in a proper algebraic subgroup and is not Zariski dense",
                        jp.rbar
                    ),
                })
            }
            Err(e) => {
                notes.push(format!("subgroup bound: {e}"));
                None
            }
        },
        _ => None,
    };

    let finiteness = finiteness_criterion(sys, &star, psi.as_ref(), delta_gt(k as i64), height_status, &orbit);
    if height_status.is_zeroish() && orbit.status() == "infinite" {
        notes.push(format!(
            "canonical height is zero yet the orbit is infinite; {}",
            if finiteness.applies { "this contradicts the finiteness criterion".to_string() } else { finiteness.reason.clone() }
        ));
    }

    SystemReport {
        k,
        dim,
        table,
        delta_enclosure,
        delta_exact,
        star,
        l,
        height_steps: steps,
        averaged,
        summed,
        psi_height,
        height_status,
        orbit,
        subgroup_bound,
        finiteness,
        notes,
    }
}

fn finiteness_criterion(
    sys: &SystemF,
    star: &StarCertificate,
    psi: Option<&crate::matkit::IntMatrix>,
    delta_gt_k: bool,
    status: HeightStatus,
    orbit: &OrbitVerdict,
) -> FinitenessCriterion {
    let no = |reason: String| FinitenessCriterion {
        applies: false,
        reason,
        expected_finite: None,
        consistent_with_orbit: None,
    };
    let Some(a) = psi else {
        return no(format!("no certified dominating map (status {})", star.status.name()));
    };
    let irreducible = match factor_over_q(&charpoly(a)) {
        Ok(f) => f.len() == 1 && f[0].1 == 1,
        Err(e) => return no(format!("characteristic polynomial of psi could not be factored: {e}")),
    };
    if !irreducible {
        return no("characteristic polynomial of psi is reducible, so the finiteness criterion does not apply".into());
    }
    if !delta_gt_k {
        return no(format!("delta is not certified to exceed k = {}", sys.k()));
    }
    let expected_finite = match status {
        HeightStatus::Zero | HeightStatus::ApproximatelyZero => Some(true),
        HeightStatus::Positive => Some(false),
        HeightStatus::Undetermined => None,
    };
    let observed = match orbit {
        OrbitVerdict::Finite { .. } => Some(true),
        OrbitVerdict::Infinite(_) => Some(false),
        OrbitVerdict::Unknown { .. } => None,
    };
    FinitenessCriterion {
        applies: true,
        reason: "psi has irreducible characteristic polynomial and delta > k: height zero iff the orbit is finite".into(),
        expected_finite,
        consistent_with_orbit: expected_finite.zip(observed).map(|(a, b)| a == b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkit::IntMatrix;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    fn run(ms: Vec<IntMatrix>, p: &str) -> SystemReport {
        let s = SystemF::new(ms).unwrap();
        system_report(&s, &PointGm::parse(p).unwrap(), &ReportOptions { n_max: 8, ..Default::default() })
    }

    #[test]
    fn diagonal_torsion() {
        let r = run(vec![m(&[&[2, 0], &[0, 3]]), m(&[&[5, 0], &[0, 2]])], "1,-1");
        assert_eq!(r.height_status, HeightStatus::Zero);
        assert_eq!(r.orbit.status(), "finite");
        assert_eq!(r.delta_exact.unwrap().exact.unwrap().to_string(), "5");
    }

    #[test]
    fn fibonacci() {
        let r = run(vec![m(&[&[1, 1], &[1, 0]])], "2,3");
        assert_eq!(r.height_status, HeightStatus::Positive);
        assert_eq!(r.orbit.status(), "infinite");
        assert!(r.finiteness.applies);
        assert_eq!(r.finiteness.consistent_with_orbit, Some(true));
        let r = run(vec![m(&[&[1, 1], &[1, 0]])], "1,-1");
        assert_eq!(r.height_status, HeightStatus::Zero);
        assert_eq!(r.finiteness.consistent_with_orbit, Some(true));
    }

    #[test]
    fn zero_height_infinite_orbit() {
        let r = run(vec![m(&[&[2, 0], &[0, 3]])], "2,1");
        assert_eq!(r.height_status, HeightStatus::Zero);
        assert_eq!(r.orbit.status(), "infinite");
        assert!(!r.finiteness.applies);
        assert_eq!(r.subgroup_bound.as_ref().unwrap().dim_lower_bound, 1);
        assert!(r.notes.iter().any(|n| n.contains("reducible")));
    }
}
