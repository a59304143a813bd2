use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::system::{growth_table, GrowthTable, SystemF};
use crate::error::{MonoError, Result};
use crate::heightkit::{
    canonical_height_closed, canonical_height_truncated, Normalization, Normalizer, PointGm,
};
use crate::jordankit::jordan_profile;
use crate::matkit::field::kernel;
use crate::matkit::{monomial_degree, spectral_radius, CertifiedReal, IntMatrix, IntPoly};
use crate::numkit::DEFAULT_PRECISION;

#[derive(Clone, Debug, PartialEq)]
pub enum StarStatus {
    /// `k = 1`: the map itself.
    SingleMap,
    CertifiedDiagonal,
    /// `A_i = g_i(A_base)`; `polynomials[i]` is `g_i`, with `g_base = x`.
    CertifiedPolynomialFamily { base: usize, polynomials: Vec<IntPoly> },
    /// The inequality held for every `n <= n_checked`; not a proof.
    Empirical { n_checked: usize },
    Unknown,
}

impl StarStatus {
    pub fn is_certified(&self) -> bool {
        matches!(
            self,
            StarStatus::SingleMap | StarStatus::CertifiedDiagonal | StarStatus::CertifiedPolynomialFamily { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            StarStatus::SingleMap => "single_map",
            StarStatus::CertifiedDiagonal => "certified_diagonal",
            StarStatus::CertifiedPolynomialFamily { .. } => "certified_polynomial_family",
            StarStatus::Empirical { .. } => "empirical",
            StarStatus::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StarCertificate {
    pub status: StarStatus,
    /// The composed map `psi = phi_{i_1} o ... o phi_{i_t}`, 0-based indices.
    pub psi_word: Option<Vec<usize>>,
    pub t: usize,
    pub psi_rho: Option<CertifiedReal>,
}

impl StarCertificate {
    pub fn psi_matrix(&self, sys: &SystemF) -> Option<IntMatrix> {
        self.psi_word.as_ref().and_then(|w| sys.word_matrix(w).ok())
    }

    /// `delta_psi^{1/t}` when `psi` is certified; here always `t = 1`.
    pub fn certified_delta(&self) -> Option<&CertifiedReal> {
        if self.status.is_certified() {
            self.psi_rho.as_ref()
        } else {
            None
        }
    }
}

/// Index of the largest spectral radius; the first one on ties.
fn argmax_rho(ms: &[IntMatrix]) -> Result<(usize, CertifiedReal)> {
    let mut best: Option<(usize, CertifiedReal)> = None;
    for (i, m) in ms.iter().enumerate() {
        let r = spectral_radius(m)?;
        let better = match &best {
            None => true,
            Some((_, b)) => r.compare(b) == Some(std::cmp::Ordering::Greater),
        };
        if better {
            best = Some((i, r));
        }
    }
    Ok(best.unwrap())
}

fn flatten(m: &IntMatrix) -> Vec<BigRational> {
    m.rows().iter().flatten().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Minimal polynomial of `a` (monic, integral) and the powers `I, ..., A^{d-1}`.
fn minimal_polynomial(a: &IntMatrix) -> (IntPoly, Vec<IntMatrix>) {
    let n = a.n();
    let mut powers = vec![IntMatrix::identity(n)];
    loop {
        let next = powers.last().unwrap().mul(a).expect("same size");
        let cols: Vec<Vec<BigRational>> = powers.iter().chain(std::iter::once(&next)).map(flatten).collect();
        let m: Vec<Vec<BigRational>> = (0..n * n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        if let Some(v) = kernel(&m).first() {
            let lead = v.last().unwrap().clone();
            let c: Vec<BigRational> = v.iter().map(|x| x / &lead).collect();
            return (IntPoly::from_rational(&crate::matkit::Poly::new(c)), powers);
        }
        powers.push(next);
    }
}

/// `g` with `target = g(base)`, reduced modulo the minimal polynomial of `base`.
fn polynomial_in(powers: &[IntMatrix], target: &IntMatrix) -> Option<IntPoly> {
    let n = target.n();
    let cols: Vec<Vec<BigRational>> = powers.iter().chain(std::iter::once(target)).map(flatten).collect();
    let m: Vec<Vec<BigRational>> = (0..n * n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let ker = kernel(&m);
    let v = ker.iter().find(|v| !v.last().unwrap().is_zero())?;
    let last = v.last().unwrap().clone();
    let mut coeffs = Vec::with_capacity(powers.len());
    for x in &v[..powers.len()] {
        let c = -(x / &last);
        if !c.is_integer() {
            return None;
        }
        coeffs.push(c.to_integer());
    }
    Some(IntPoly::new(coeffs))
}

const LOW_HEIGHT_SEARCH: u64 = 20_000;

/// Among `g + mu q` with `q` integral of degree `< deg mu` and small
/// coefficients, the one of least height, then least degree.
fn lowest_height(g: &IntPoly, mu: &IntPoly) -> IntPoly {
    let d = mu.deg();
    let h = g.max_abs_coeff();
    let Some(hh) = h.to_i64() else { return g.clone() };
    let span = (2 * hh + 1) as u64;
    if d == 0 || span.checked_pow(d as u32).is_none_or(|c| c > LOW_HEIGHT_SEARCH) {
        return g.clone();
    }
    let key = |p: &IntPoly| (p.max_abs_coeff(), p.deg(), p.coeffs().iter().map(|c| c.abs()).sum::<BigInt>());
    let mut best = g.clone();
    let mut q = vec![-hh; d];
    loop {
        let qp = IntPoly::new(q.iter().map(|&x| BigInt::from(x)).collect());
        let cand = g.add(&mu.mul(&qp));
        if !cand.is_zero() && key(&cand) < key(&best) {
            best = cand;
        }
        let mut i = 0;
        while i < d {
            if q[i] < hh {
                q[i] += 1;
                break;
            }
            q[i] = -hh;
            i += 1;
        }
        if i == d {
            break;
        }
    }
    best
}

fn polynomial_family(sys: &SystemF) -> Option<(usize, Vec<IntPoly>)> {
    for base in 0..sys.k() {
        let (mu, powers) = minimal_polynomial(&sys.matrices()[base]);
        let mut gs = Vec::with_capacity(sys.k());
        for (i, a) in sys.matrices().iter().enumerate() {
            if i == base {
                gs.push(IntPoly::from_i64(&[0, 1]));
                continue;
            }
            match polynomial_in(&powers, a) {
                Some(g) => gs.push(lowest_height(&g, &mu)),
                None => break,
            }
        }
        if gs.len() == sys.k() {
            return Some((base, gs));
        }
    }
    None
}

fn ln_big(x: &BigInt) -> f64 {
    let b = x.bits();
    if b <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = b - 64;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// The displayed inequality for `l = 0..=N`, with degrees for `rho`, over
/// the computed table.
fn star_inequality_holds(sys: &SystemF, table: &GrowthTable, psi: &[usize]) -> Result<bool> {
    let t = psi.len();
    let m = sys.word_matrix(psi)?;
    let ld = spectral_radius(&m)?.to_f64().ln() / t as f64;
    let n_max = table.rows.len();
    let mut psi_deg = Vec::new();
    let mut p = m.clone();
    for s in 1..=n_max / t {
        if s > 1 {
            p = p.mul(&m)?;
        }
        psi_deg.push(ln_big(&monomial_degree(&p)));
    }
    for l in 0..=sys.dim() {
        let lhs = table
            .rows
            .iter()
            .map(|r| ln_big(&r.max_degree) - l as f64 * (r.n as f64).ln() - r.n as f64 * ld)
            .fold(f64::NEG_INFINITY, f64::max);
        let rhs = psi_deg
            .iter()
            .enumerate()
            .map(|(i, lg)| {
                let ts = (t * (i + 1)) as f64;
                lg - l as f64 * ts.ln() - ts * ld
            })
            .fold(f64::NEG_INFINITY, f64::max);
        if lhs > rhs + 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Recognize the families with a single dominating map: one map, diagonal
/// matrices, and polynomials in one matrix. All three have
/// `rho(Phi_n) = (max_i rho(A_i))^n`, so `psi` is the map of largest spectral
/// radius and `t = 1`. Other systems are checked numerically on the table.
pub fn certify_star(sys: &SystemF, n_max: usize, budget: u64) -> StarCertificate {
    let unknown = StarCertificate { status: StarStatus::Unknown, psi_word: None, t: 0, psi_rho: None };
    let certified = |status: StarStatus| match argmax_rho(sys.matrices()) {
        Ok((i, r)) => StarCertificate { status, psi_word: Some(vec![i]), t: 1, psi_rho: Some(r) },
        Err(_) => StarCertificate { status: StarStatus::Unknown, psi_word: None, t: 0, psi_rho: None },
    };
    if sys.k() == 1 {
        return certified(StarStatus::SingleMap);
    }
    if sys.matrices().iter().all(IntMatrix::is_diagonal) {
        return certified(StarStatus::CertifiedDiagonal);
    }
    if let Some((base, polynomials)) = polynomial_family(sys) {
        return certified(StarStatus::CertifiedPolynomialFamily { base, polynomials });
    }
    let n = sys.max_levels(n_max, budget);
    if n == 0 {
        return unknown;
    }
    let Ok(table) = growth_table(sys, n, budget) else { return unknown };
    let psi = table.lower_word().to_vec();
    match star_inequality_holds(sys, &table, &psi) {
        Ok(true) => {
            let rho = sys.word_matrix(&psi).and_then(|m| spectral_radius(&m)).ok();
            StarCertificate { status: StarStatus::Empirical { n_checked: n }, t: psi.len(), psi_word: Some(psi), psi_rho: rho }
        }
        _ => StarCertificate { psi_word: Some(psi.clone()), t: psi.len(), ..unknown },
    }
}

#[derive(Clone, Debug)]
pub struct LEstimate {
    pub l: Option<usize>,
    /// Exact when the system has a certified `psi`.
    pub certified: bool,
    /// `(n, log maxdeg_n - l log n - n log delta)` for the reported `l`.
    pub evidence: Vec<(usize, f64)>,
}

fn log_ratios(table: &GrowthTable, l: usize, ld: f64) -> Vec<(usize, f64)> {
    table
        .rows
        .iter()
        .map(|r| (r.n, ln_big(&r.max_degree) - l as f64 * (r.n as f64).ln() - r.n as f64 * ld))
        .collect()
}

/// Smallest `l <= N` for which `maxdeg_n / (n^l delta^n)` over the second
/// half of the table stays below its maximum over the first half.
pub fn degree_l_heuristic(table: &GrowthTable, delta: f64, dim: usize) -> Option<usize> {
    let rows = table.rows.len();
    if rows < 2 || !(delta > 0.0) {
        return None;
    }
    let ld = delta.ln();
    let half = rows / 2;
    (0..=dim).find(|&l| {
        let r = log_ratios(table, l, ld);
        let first = r[..half].iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
        let second = r[half..].iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
        second <= first + 1e-9
    })
}

pub fn l_f_estimate(sys: &SystemF, table: &GrowthTable, cert: &StarCertificate) -> Result<LEstimate> {
    if let (true, Some(psi)) = (cert.status.is_certified(), cert.psi_matrix(sys)) {
        let l = jordan_profile(&psi)?.l;
        let delta = cert.psi_rho.as_ref().map_or(1.0, CertifiedReal::to_f64);
        return Ok(LEstimate { l: Some(l), certified: true, evidence: log_ratios(table, l, delta.ln()) });
    }
    let delta = table.lower.to_f64();
    let l = degree_l_heuristic(table, delta, sys.dim());
    let evidence = l.map(|l| log_ratios(table, l, delta.ln())).unwrap_or_default();
    Ok(LEstimate { l, certified: false, evidence })
}

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub pass: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ReductionCheck {
    pub psi_word: Vec<usize>,
    pub t: usize,
    /// `delta_Phi = delta_psi^{1/t}`.
    pub delta: CheckItem,
    /// `l_Phi = l_psi`.
    pub l: CheckItem,
    /// `h_Phi(P) = 0` forces `h_psi(P) = 0`.
    pub zero_heights: CheckItem,
}

impl ReductionCheck {
    pub fn all_pass(&self) -> bool {
        [&self.delta, &self.l, &self.zero_heights].iter().all(|c| c.pass != Some(false))
    }
}

/// Check the reduction of a certified system to its dominating map `psi`:
/// equality of dynamical degrees and of the correction exponents, and the
/// inclusion of height-zero sets on the given point.
pub fn reduction_check(
    sys: &SystemF,
    p: &PointGm,
    n_max: usize,
    budget: u64,
    tol: f64,
) -> Result<ReductionCheck> {
    let cert = certify_star(sys, n_max, budget);
    if !cert.status.is_certified() {
        return Err(MonoError::domain(format!(
            "the reduction to a single map needs a certified dominating map; status is {}",
            cert.status.name()
        )));
    }
    let psi_word = cert.psi_word.clone().unwrap();
    let psi = sys.word_matrix(&psi_word)?;
    let rho_psi = cert.psi_rho.clone().unwrap();
    let n = sys.max_levels(n_max, budget).max(1);
    let table = growth_table(sys, n, budget)?;

    let mut exact = true;
    let mut ok = true;
    for r in &table.rows {
        let want = rho_psi.pow(r.n as u32);
        match (&r.rho.exact, &want.exact) {
            (Some(x), Some(y)) => ok &= x == y,
            _ => {
                exact = false;
                ok &= r.rho.enclosure.overlaps(&want.enclosure);
            }
        }
    }
    let rp = rho_psi.interval(DEFAULT_PRECISION);
    let inside = table.lower.lo() <= rp.hi() && rp.lo() <= table.upper.hi();
    let delta = CheckItem {
        pass: Some(ok && inside),
        detail: format!(
            "rho(Phi_n) = rho(psi)^n for n = 1..{n} ({}); delta_psi = {} within [{}, {}]",
            if exact { "exact" } else { "within enclosures" },
            rho_psi,
            table.lower.to_decimal(12),
            table.upper.to_decimal(12)
        ),
    };

    let l_psi = jordan_profile(&psi)?.l;
    let l_phi = degree_l_heuristic(&table, rho_psi.to_f64(), sys.dim());
    let l = CheckItem {
        pass: Some(l_phi == Some(l_psi)),
        detail: format!(
            "l_psi = {l_psi} from the Jordan blocks of psi; degree growth of Phi gives l = {}",
            l_phi.map_or("none".to_string(), |x| x.to_string())
        ),
    };

    let mut hn = n;
    while hn > 1 && (sys.k() as u64).checked_pow(hn as u32).is_none_or(|w| w > budget) {
        hn -= 1;
    }
    let norm = Normalizer { delta: rho_psi.interval(DEFAULT_PRECISION), l: l_psi };
    let est = canonical_height_truncated(sys.matrices(), p, hn, Normalization::Summed, &norm, budget)?;
    let phi_small = est.estimate.hi().to_f64() < tol;
    let zero_heights = match canonical_height_closed(&psi, p, tol) {
        Ok(h) => {
            let psi_small = h.is_zero() || h.value.hi().to_f64() < tol;
            CheckItem {
                pass: Some(!phi_small || psi_small),
                detail: format!(
                    "truncated h_Phi(P) at n = {hn}: {}; closed h_psi(P) = {}",
                    est.estimate.to_decimal(12),
                    h.exact.map_or_else(|| h.value.to_decimal(15), |f| f.to_string())
                ),
            }
        }
        Err(e) => CheckItem { pass: None, detail: format!("closed form of h_psi unavailable: {e}") },
    };
    Ok(ReductionCheck { psi_word, t: cert.t, delta, l, zero_heights })
}
