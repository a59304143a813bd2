use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};

use super::point::{check_dim, PointGm};
use super::profile::{height_of_valuations, int_mat_vec, log_profile};
use crate::error::{MonoError, Result};
use crate::jordankit::jordan_profile;
use crate::matkit::IntMatrix;
use crate::numkit::elementary::nth_root;
use crate::numkit::{Interval, LogForm, DEFAULT_PRECISION};

pub const DEFAULT_WORD_BUDGET: u64 = 1_000_000;

/// How the word sum over `F_n` is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `1 / (n^l k^n delta^n)`: the mean over words.
    Averaged,
    /// `1 / (n^l delta^n)`: the plain sum over words.
    Summed,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::Averaged => "averaged",
            Normalization::Summed => "summed",
        }
    }
}

/// `delta` and the polynomial correction `l` of the normalizer.
#[derive(Clone, Debug)]
pub struct Normalizer {
    pub delta: Interval,
    pub l: usize,
}

impl Normalizer {
    /// `rho(A)` and the dominant Jordan defect of a single matrix.
    pub fn single_map(a: &IntMatrix) -> Result<Normalizer> {
        let p = jordan_profile(a)?;
        Ok(Normalizer { delta: p.rho.interval(DEFAULT_PRECISION), l: p.l })
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedEstimate {
    pub normalization: Normalization,
    pub l: usize,
    /// Exact `sum_{f in F_m} h(f(P))` for `m = 1..=n`.
    pub word_sums: Vec<LogForm>,
    /// Normalized values for `m = 1..=n`.
    pub values: Vec<Interval>,
    /// Largest value over the last `window` steps.
    pub estimate: Interval,
    pub window: usize,
}

impl TruncatedEstimate {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Whether every word sum is exactly zero from step `from` on (1-based).
    pub fn identically_zero_from(&self, from: usize) -> bool {
        self.word_sums.iter().skip(from.saturating_sub(1)).all(LogForm::is_zero)
    }
}

type Vals = BTreeMap<BigUint, Vec<BigInt>>;

fn check_system(f: &[IntMatrix], p: &PointGm) -> Result<()> {
    let first = f.first().ok_or_else(|| MonoError::domain("empty system"))?;
    for a in f {
        check_dim(first.n(), a.n())?;
    }
    check_dim(first.n(), p.dim())
}

fn check_budget(k: usize, n: usize, budget: u64) -> Result<()> {
    let mut words: u64 = 1;
    for _ in 0..n {
        words = words.saturating_mul(k as u64);
    }
    if words > budget {
        return Err(MonoError::budget(format!("{k}^{n} words exceed the word budget {budget}")));
    }
    Ok(())
}

/// Heights `h(f(P))` for every word `f` of length `m = 1..=n`, in word
/// order, handed level by level to `visit`.
///
/// A word `(i_1, ..., i_m)` acts as `phi_{i_1} o ... o phi_{i_m}`, so level
/// `m` is obtained by applying each `A_i` on the left of level `m - 1`.
pub fn for_each_level(
    f: &[IntMatrix],
    p: &PointGm,
    n: usize,
    budget: u64,
    mut visit: impl FnMut(usize, &[LogForm]),
) -> Result<()> {
    check_system(f, p)?;
    check_budget(f.len(), n, budget)?;
    let dim = p.dim();
    let mut level: Vec<Vals> = vec![log_profile(p)?.finite];
    let mut cache: HashMap<Vals, LogForm> = HashMap::new();
    for m in 1..=n {
        let mut next = Vec::with_capacity(level.len() * f.len());
        for a in f {
            for v in &level {
                let mut w = Vals::new();
                for (q, x) in v {
                    let y = int_mat_vec(a, x);
                    if y.iter().any(|t| t.sign() != num_bigint::Sign::NoSign) {
                        w.insert(q.clone(), y);
                    }
                }
                next.push(w);
            }
        }
        let heights: Vec<LogForm> = next
            .iter()
            .map(|w| {
                cache.entry(w.clone()).or_insert_with(|| height_of_valuations(w, dim)).clone()
            })
            .collect();
        visit(m, &heights);
        level = next;
        if cache.len() > 4 * budget as usize {
            cache.clear();
        }
    }
    Ok(())
}

/// Word-sum estimator of the canonical height after `n` steps.
pub fn canonical_height_truncated(
    f: &[IntMatrix],
    p: &PointGm,
    n: usize,
    normalization: Normalization,
    norm: &Normalizer,
    budget: u64,
) -> Result<TruncatedEstimate> {
    if n == 0 {
        return Err(MonoError::domain("n must be at least 1"));
    }
    let prec = norm.delta.precision().max(DEFAULT_PRECISION);
    let k = f.len() as i64;
    let mut word_sums = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    let mut delta_pow = Interval::one(prec);
    for_each_level(f, p, n, budget, |m, hs| {
        let s = hs.iter().fold(LogForm::zero(), |acc, h| acc.add(h));
        delta_pow = &delta_pow * &norm.delta;
        let mut den = delta_pow.clone();
        for _ in 0..norm.l {
            den = den.mul_int(m as i64);
        }
        if normalization == Normalization::Averaged {
            den = &den * &Interval::from_int(k, prec).pow_u(m as u64);
        }
        let v = if s.is_zero() { Interval::zero(prec) } else { s.to_interval(prec).div(&den) };
        word_sums.push(s);
        values.push(v);
    })?;
    let window = n.div_ceil(4);
    let estimate = values[n - window..]
        .iter()
        .cloned()
        .reduce(|a, b| a.max(&b))
        .unwrap();
    Ok(TruncatedEstimate { normalization, l: norm.l, word_sums, values, estimate, window })
}

#[derive(Clone, Debug)]
pub struct ArithmeticDegree {
    pub value: Interval,
    /// `(1/k) (sum_{f in F_m} max(1, h(f(P))))^{1/m}` for `m = 1..=n`.
    pub sequence: Vec<Interval>,
}

pub fn arithmetic_degree_estimate(
    f: &[IntMatrix],
    p: &PointGm,
    n: usize,
    budget: u64,
) -> Result<ArithmeticDegree> {
    if n == 0 {
        return Err(MonoError::domain("n must be at least 1"));
    }
    let prec = DEFAULT_PRECISION;
    let one = Interval::one(prec);
    let k = f.len() as i64;
    let mut sequence = Vec::with_capacity(n);
    for_each_level(f, p, n, budget, |m, hs| {
        let s = hs
            .iter()
            .fold(Interval::zero(prec), |acc, h| &acc + &h.to_interval(prec).max(&one));
        sequence.push(nth_root(&s, m as u32).div_int(k));
    })?;
    Ok(ArithmeticDegree { value: sequence.last().unwrap().clone(), sequence })
}
