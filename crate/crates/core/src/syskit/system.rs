use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{MonoError, Result};
use crate::matkit::{monomial_degree, spectral_radius, CertifiedReal, IntMatrix};
use crate::numkit::elementary::nth_root;
use crate::numkit::{Interval, DEFAULT_PRECISION};

pub const DEFAULT_WORD_BUDGET: u64 = 1_000_000;
pub const ENTRY_BIT_BUDGET: u64 = 1 << 16;

/// A finite set of monomial maps `{phi_1, ..., phi_k}` on the same torus.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemF {
    matrices: Vec<IntMatrix>,
}

impl SystemF {
    pub fn new(matrices: Vec<IntMatrix>) -> Result<Self> {
        let first = matrices.first().ok_or_else(|| MonoError::domain("a system needs at least one matrix"))?;
        for m in &matrices {
            if m.n() != first.n() {
                return Err(MonoError::DimensionMismatch { expected: first.n(), found: m.n() });
            }
        }
        Ok(SystemF { matrices })
    }

    pub fn single(a: IntMatrix) -> Self {
        SystemF { matrices: vec![a] }
    }

    pub fn k(&self) -> usize {
        self.matrices.len()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].n()
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    /// `{"k": k, "matrices": [...]}`; `k` is optional but must match.
    pub fn from_json(v: &Value) -> Result<Self> {
        let ms = v
            .get("matrices")
            .and_then(Value::as_array)
            .ok_or_else(|| MonoError::Parse("system JSON needs a \"matrices\" array".into()))?;
        let matrices = ms.iter().map(IntMatrix::from_json).collect::<Result<Vec<_>>>()?;
        if let Some(k) = v.get("k") {
            let k = k.as_u64().ok_or_else(|| MonoError::Parse("\"k\" must be a positive integer".into()))?;
            if k as usize != matrices.len() {
                return Err(MonoError::Parse(format!("\"k\" is {k} but {} matrices were given", matrices.len())));
            }
        }
        SystemF::new(matrices)
    }

    pub fn to_json(&self) -> Value {
        json!({ "k": self.k(), "matrices": self.matrices.iter().map(IntMatrix::to_json).collect::<Vec<_>>() })
    }

    /// Matrix of `phi_{i_1} o ... o phi_{i_t}`.
    pub fn word_matrix(&self, word: &[usize]) -> Result<IntMatrix> {
        let ms: Vec<IntMatrix> = word
            .iter()
            .map(|&i| {
                self.matrices
                    .get(i)
                    .cloned()
                    .ok_or_else(|| MonoError::domain(format!("word index {i} out of range")))
            })
            .collect::<Result<_>>()?;
        crate::matkit::word_product(&ms)
    }

    /// Largest `n <= n_max` with `k + k^2 + ... + k^n <= budget`.
    pub fn max_levels(&self, n_max: usize, budget: u64) -> usize {
        let k = self.k() as u64;
        let (mut total, mut level, mut n) = (0u64, 1u64, 0usize);
        while n < n_max {
            level = level.saturating_mul(k);
            total = total.saturating_add(level);
            if total > budget {
                break;
            }
            n += 1;
        }
        n
    }
}

/// Text form with 1-based indices: `[2,2]` is `A_2 A_2`.
pub fn word_string(word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Words of length `1..=n` in lexicographic order, with their products
/// memoized along the prefix tree. `visit` sees each level once.
pub fn for_each_word_level(
    sys: &SystemF,
    n: usize,
    budget: u64,
    mut visit: impl FnMut(usize, &[(Vec<usize>, IntMatrix)]) -> Result<()>,
) -> Result<()> {
    if sys.max_levels(n, budget) < n {
        return Err(MonoError::budget(format!(
            "words of length up to {n} over {} maps exceed the word budget {budget}",
            sys.k()
        )));
    }
    let mut level: Vec<(Vec<usize>, IntMatrix)> = vec![(Vec::new(), IntMatrix::identity(sys.dim()))];
    for m in 1..=n {
        let mut next = Vec::with_capacity(level.len() * sys.k());
        for (w, p) in &level {
            for (i, a) in sys.matrices.iter().enumerate() {
                let q = p.mul(a)?;
                if q.max_entry_bits() > ENTRY_BIT_BUDGET {
                    return Err(MonoError::budget(format!(
                        "word product entries exceed {ENTRY_BIT_BUDGET} bits at length {m}"
                    )));
                }
                let mut w2 = w.clone();
                w2.push(i);
                next.push((w2, q));
            }
        }
        visit(m, &next)?;
        level = next;
    }
    Ok(())
}

fn norm_bound(rows: &[Vec<BigInt>]) -> f64 {
    let n = rows.len();
    let inf = rows.iter().map(|r| r.iter().map(|x| x.abs()).sum::<BigInt>()).max().unwrap();
    let one = (0..n).map(|j| rows.iter().map(|r| r[j].abs()).sum::<BigInt>()).max().unwrap();
    inf.min(one).to_f64().unwrap_or(f64::INFINITY)
}

/// Certified-safe upper bound on the spectral radius, from the 1- and
/// infinity-norms of `M` and `M^2`.
fn rho_upper_bound(m: &IntMatrix) -> f64 {
    let m2 = crate::matkit::intmatrix::int_mat_mul(m.rows(), m.rows());
    let b = norm_bound(m.rows()).min(norm_bound(&m2).sqrt());
    b * (1.0 + 1e-9) + 1e-300
}

#[derive(Clone, Debug)]
pub struct LevelMax {
    pub rho: CertifiedReal,
    pub word: Vec<usize>,
}

/// `max_w rho(w)` over one level. Later words only replace earlier ones when
/// provably larger, so the reported word is the first maximizer.
pub fn level_max_rho(level: &[(Vec<usize>, IntMatrix)]) -> Result<LevelMax> {
    let mut first: HashMap<&IntMatrix, usize> = HashMap::new();
    let mut distinct: Vec<usize> = Vec::new();
    for (i, (_, m)) in level.iter().enumerate() {
        first.entry(m).or_insert_with(|| {
            distinct.push(i);
            i
        });
    }
    let mut cands: Vec<(f64, usize)> = distinct.iter().map(|&i| (rho_upper_bound(&level[i].1), i)).collect();
    cands.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let mut best: Option<(CertifiedReal, usize)> = None;
    for (ub, i) in cands {
        if let Some((b, _)) = &best {
            let lo = b.enclosure.lo().to_f64() * (1.0 - 1e-9);
            if ub < lo {
                break;
            }
        }
        let r = spectral_radius(&level[i].1)?;
        best = Some(match best {
            None => (r, i),
            Some((b, j)) => {
                match r.compare(&b) {
                    Some(std::cmp::Ordering::Greater) => (r, i),
                    Some(std::cmp::Ordering::Less) => (b, j),
                    Some(std::cmp::Ordering::Equal) => if i < j { (r, i) } else { (b, j) },
                    // indistinguishable at the working precision: keep both
                    // in the enclosure
                    None => {
                        let hull = CertifiedReal::from_enclosure(r.enclosure.hull(&b.enclosure));
                        (hull, i.min(j))
                    }
                }
            }
        });
    }
    let (rho, i) = best.expect("nonempty level");
    Ok(LevelMax { rho, word: level[i].0.clone() })
}

/// `rho(Phi_n)` with one maximizing word.
pub fn rho_fn(sys: &SystemF, n: usize, budget: u64) -> Result<LevelMax> {
    if n == 0 {
        return Err(MonoError::domain("n must be at least 1"));
    }
    let mut out = None;
    for_each_word_level(sys, n, budget, |m, level| {
        if m == n {
            out = Some(level_max_rho(level)?);
        }
        Ok(())
    })?;
    Ok(out.unwrap())
}

#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub n: usize,
    pub rho: CertifiedReal,
    pub rho_word: Vec<usize>,
    /// Largest algebraic degree among the maps of `Phi_n`.
    pub max_degree: BigInt,
    pub degree_word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    /// `max_n rho(Phi_n)^{1/n}`, a lower bound for `delta`.
    pub lower: Interval,
    pub lower_n: usize,
    /// `min_m (maxdeg_m)^{1/m}`, an upper bound by submultiplicativity of degrees.
    pub upper: Interval,
    pub upper_m: usize,
}

impl GrowthTable {
    /// `[lower, upper]` with outward endpoints.
    pub fn enclosure(&self) -> Interval {
        Interval::new(self.lower.lo().clone(), self.upper.hi().clone(), DEFAULT_PRECISION)
    }

    pub fn lower_word(&self) -> &[usize] {
        &self.rows[self.lower_n - 1].rho_word
    }
}

pub fn growth_table(sys: &SystemF, n_max: usize, budget: u64) -> Result<GrowthTable> {
    if n_max == 0 {
        return Err(MonoError::domain("n_max must be at least 1"));
    }
    let prec = DEFAULT_PRECISION;
    let mut rows = Vec::with_capacity(n_max);
    for_each_word_level(sys, n_max, budget, |n, level| {
        let best = level_max_rho(level)?;
        let mut max_degree = BigInt::zero();
        let mut degree_word = Vec::new();
        for (w, m) in level {
            let d = monomial_degree(m);
            if d > max_degree || degree_word.is_empty() {
                max_degree = d;
                degree_word = w.clone();
            }
        }
        rows.push(GrowthRow { n, rho: best.rho, rho_word: best.word, max_degree, degree_word });
        Ok(())
    })?;
    let mut lower: Option<(Interval, usize)> = None;
    let mut upper: Option<(Interval, usize)> = None;
    for r in &rows {
        let lo = nth_root(&r.rho.interval(prec), r.n as u32);
        if lower.as_ref().is_none_or(|(b, _)| lo.lo() > b.lo()) {
            lower = Some((lo, r.n));
        }
        let up = nth_root(&Interval::from_bigint(&r.max_degree, prec), r.n as u32);
        if upper.as_ref().is_none_or(|(b, _)| up.hi() < b.hi()) {
            upper = Some((up, r.n));
        }
    }
    let (lower, lower_n) = lower.unwrap();
    let (upper, upper_m) = upper.unwrap();
    Ok(GrowthTable { rows, lower, lower_n, upper, upper_m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{rat, Quad};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn rho_examples() {
        let s = SystemF::single(m(&[&[2, 0], &[0, 3]]));
        assert_eq!(rho_fn(&s, 4, 1000).unwrap().rho.exact, Some(Quad::from_int(81)));
        let s = SystemF::new(vec![m(&[&[2, 0], &[0, 3]]), m(&[&[5, 0], &[0, 2]])]).unwrap();
        let r = rho_fn(&s, 2, 1000).unwrap();
        assert_eq!(r.rho.exact, Some(Quad::from_int(25)));
        assert_eq!(r.word, vec![1, 1]);
        let s = SystemF::new(vec![m(&[&[1, 1], &[0, 1]]), m(&[&[1, 0], &[1, 1]])]).unwrap();
        let r = rho_fn(&s, 2, 1000).unwrap();
        assert_eq!(r.rho.exact, Some(Quad::new(rat(3, 2), rat(1, 2), &BigInt::from(5))));
    }

    #[test]
    fn json_round_trip() {
        let s = SystemF::new(vec![m(&[&[2, 0], &[0, 3]]), m(&[&[5, 0], &[0, 2]])]).unwrap();
        assert_eq!(SystemF::from_json(&s.to_json()).unwrap(), s);
        let bad = json!({"k": 3, "matrices": [{"rows": [[1]]}]});
        assert!(SystemF::from_json(&bad).is_err());
    }

    #[test]
    fn degree_submultiplicativity() {
        let s = SystemF::new(vec![m(&[&[1, 1], &[0, 1]]), m(&[&[0, 1], &[-1, 2]])]).unwrap();
        let t = growth_table(&s, 8, 10_000).unwrap();
        for a in &t.rows {
            for b in &t.rows {
                if a.n + b.n <= 8 {
                    assert!(t.rows[a.n + b.n - 1].max_degree <= &a.max_degree * &b.max_degree);
                }
            }
        }
        assert!(t.lower.lo() <= t.upper.hi());
    }

    #[test]
    fn budgets() {
        let s = SystemF::new(vec![m(&[&[2]]), m(&[&[3]])]).unwrap();
        assert_eq!(s.max_levels(12, 1_000_000), 12);
        assert_eq!(s.max_levels(12, 10), 2);
        assert_eq!(rho_fn(&s, 5, 10).unwrap_err().kind(), "budget");
        let e = BigInt::from(1) << 40_000usize;
        let big = SystemF::single(IntMatrix::new(vec![vec![e]]).unwrap());
        assert_eq!(rho_fn(&big, 2, 100).unwrap_err().kind(), "budget");
    }
}
