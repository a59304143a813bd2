use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::point::PointGm;
use super::profile::{log_profile, transport_profile, weil_height, LogProfile};
use crate::error::{MonoError, Result};
use crate::matkit::factor::{factor_over_q, is_cyclotomic, poly_lcm};
use crate::matkit::field::kernel;
use crate::matkit::{IntMatrix, IntPoly};

pub const DEFAULT_ORBIT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub enum OrbitVerdict {
    /// The orbit was enumerated completely. Preperiod and period are given
    /// for a single map.
    Finite { orbit_size: usize, preperiod: Option<usize>, period: Option<usize> },
    Infinite(InfiniteCertificate),
    /// The budget ran out before either conclusion.
    Unknown { explored: usize },
}

impl OrbitVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            OrbitVerdict::Finite { .. } => "finite",
            OrbitVerdict::Infinite(_) => "infinite",
            OrbitVerdict::Unknown { .. } => "unknown",
        }
    }
}

/// Unboundedness of the valuations of `phi_i^n(P)`: the minimal polynomial
/// of `A_i` relative to the valuation vectors of `P` is not a squarefree
/// product of cyclotomic polynomials, so `A_i^n v` is unbounded.
#[derive(Clone, Debug, PartialEq)]
pub struct InfiniteCertificate {
    pub map_index: usize,
    pub local_minimal_polynomial: IntPoly,
    /// First `n` with `h(phi_i^n(P))` above every earlier height, if found
    /// within the budget.
    pub witness_step: Option<usize>,
}

/// Monic minimal polynomial of `A` on the cyclic subspace spanned by `v`.
pub fn local_minimal_polynomial(a: &IntMatrix, v: &[BigInt]) -> IntPoly {
    let n = a.n();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut krylov: Vec<Vec<BigInt>> = vec![v.to_vec()];
    if v.iter().all(Zero::is_zero) {
        return IntPoly::one();
    }
    loop {
        let next = super::profile::int_mat_vec(a, krylov.last().unwrap());
        krylov.push(next);
        // columns are the Krylov vectors
        let m: Vec<Vec<BigRational>> =
            (0..n).map(|i| krylov.iter().map(|w| q(&w[i])).collect()).collect();
        let ker = kernel(&m);
        if let Some(c) = ker.first() {
            // first dependency: the kernel is one-dimensional with a nonzero
            // last coordinate
            let lead = c.last().unwrap().clone();
            let coeffs: Vec<BigRational> = c.iter().map(|x| x / &lead).collect();
            return IntPoly::from_rational(&crate::matkit::Poly::new(coeffs));
        }
    }
}

fn relative_minimal_polynomial(a: &IntMatrix, prof: &LogProfile) -> IntPoly {
    prof.finite
        .values()
        .map(|v| local_minimal_polynomial(a, v))
        .fold(IntPoly::one(), |acc, p| poly_lcm(&acc, &p))
}

fn is_torsion_poly(p: &IntPoly) -> Result<bool> {
    if p.deg() == 0 {
        return Ok(true);
    }
    Ok(factor_over_q(p)?.iter().all(|(f, e)| *e == 1 && is_cyclotomic(f)))
}

fn witness_step(a: &IntMatrix, prof: &LogProfile, budget: usize) -> Result<Option<usize>> {
    let mut best = weil_height(prof);
    let mut q = prof.clone();
    for n in 1..=budget.min(64) {
        q = transport_profile(a, &q)?;
        let h = weil_height(&q);
        if h.cmp_exact(&best).is_gt() {
            return Ok(Some(n));
        }
        best = best.max_exact(&h);
    }
    Ok(None)
}

/// Decide whether the forward orbit of `P` under the semigroup generated by
/// `f` is finite, working with valuation vectors and signs.
pub fn classify_orbit(f: &[IntMatrix], p: &PointGm, budget: usize) -> Result<OrbitVerdict> {
    if f.is_empty() {
        return Err(MonoError::domain("empty system"));
    }
    let start = log_profile(p)?;
    for (i, a) in f.iter().enumerate() {
        super::point::check_dim(a.n(), p.dim())?;
        let mu = relative_minimal_polynomial(a, &start);
        if !is_torsion_poly(&mu)? {
            return Ok(OrbitVerdict::Infinite(InfiniteCertificate {
                map_index: i,
                local_minimal_polynomial: mu,
                witness_step: witness_step(a, &start, budget)?,
            }));
        }
    }
    if f.len() == 1 {
        return single_orbit(&f[0], start, budget);
    }
    // Breadth-first closure of the orbit, checking each new state for an
    // unbounded single-map orbit.
    let mut seen: HashSet<LogProfile> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        for a in f {
            let t = transport_profile(a, &s)?;
            if seen.contains(&t) {
                continue;
            }
            for (j, b) in f.iter().enumerate() {
                let mu = relative_minimal_polynomial(b, &t);
                if !is_torsion_poly(&mu)? {
                    return Ok(OrbitVerdict::Infinite(InfiniteCertificate {
                        map_index: j,
                        local_minimal_polynomial: mu,
                        witness_step: None,
                    }));
                }
            }
            seen.insert(t.clone());
            if seen.len() > budget {
                return Ok(OrbitVerdict::Unknown { explored: seen.len() });
            }
            queue.push_back(t);
        }
    }
    Ok(OrbitVerdict::Finite { orbit_size: seen.len(), preperiod: None, period: None })
}

fn single_orbit(a: &IntMatrix, start: LogProfile, budget: usize) -> Result<OrbitVerdict> {
    let mut index: HashMap<LogProfile, usize> = HashMap::new();
    let mut s = start;
    for step in 0..=budget {
        if let Some(&first) = index.get(&s) {
            return Ok(OrbitVerdict::Finite {
                orbit_size: step,
                preperiod: Some(first),
                period: Some(step - first),
            });
        }
        let next = transport_profile(a, &s)?;
        index.insert(s, step);
        s = next;
    }
    Ok(OrbitVerdict::Unknown { explored: budget })
}
