//! Eigenvalues of integer matrices grouped by irreducible factor, ranked by
//! modulus with certified comparisons, and the spectral radius.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::charpoly::charpoly;
use super::factor::factor_over_q;
use super::intmatrix::IntMatrix;
use super::poly::{IntPoly, Poly};
use super::roots::{complex_roots, RootDisk, MAX_ROOT_BITS};
use super::sturm::SturmSequence;
use crate::error::{MonoError, Result};
use crate::numkit::{Dyadic, Interval, Quad};

const START_BITS: u32 = 160;
/// Relative width demanded of the spectral-radius enclosure.
const RHO_REL_BITS: i64 = 80;
/// Largest factor degree for which the exact product-of-roots test is tried.
const MAX_EXACT_TIE_DEGREE: usize = 12;

/// A certified real number: an enclosure, plus the exact value when it is
/// rational or quadratic.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedReal {
    pub enclosure: Interval,
    pub exact: Option<Quad>,
}

impl CertifiedReal {
    pub fn from_exact(q: Quad, prec: u32) -> Self {
        CertifiedReal { enclosure: q.to_interval(prec), exact: Some(q) }
    }

    pub fn from_enclosure(enclosure: Interval) -> Self {
        CertifiedReal { enclosure, exact: None }
    }

    /// Enclosure at (at least) `prec` bits when an exact value is known.
    pub fn interval(&self, prec: u32) -> Interval {
        match &self.exact {
            Some(q) => q.to_interval(prec),
            None => self.enclosure.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure.to_f64()
    }

    pub fn pow(&self, k: u32) -> CertifiedReal {
        match &self.exact {
            Some(q) => CertifiedReal::from_exact(q.pow(k), self.enclosure.precision()),
            None => CertifiedReal::from_enclosure(self.enclosure.pow_u(k as u64)),
        }
    }

    /// Exact when both values are exact (distinct quadratic fields are
    /// separated by refining), otherwise by enclosures; `None` only when the
    /// enclosures overlap.
    pub fn compare(&self, other: &CertifiedReal) -> Option<Ordering> {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            if a.is_rational() || b.is_rational() || a.d == b.d {
                return Some(a.cmp(b));
            }
            let mut prec = 128;
            loop {
                if let Some(o) = a.to_interval(prec).certain_cmp(&b.to_interval(prec)) {
                    return Some(o);
                }
                prec *= 2;
            }
        }
        self.enclosure.certain_cmp(&other.enclosure)
    }

    /// `[lo, hi]` as decimal strings.
    pub fn enclosure_strings(&self, digits: usize) -> (String, String) {
        self.enclosure.endpoints_decimal(digits)
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}", self.enclosure.to_decimal(20)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EigenValue {
    Rational(BigRational),
    /// Real root of an irreducible quadratic.
    RealQuad(Quad),
    /// `re + i*im` with `im` real quadratic (nonzero).
    ComplexQuad { re: BigRational, im: Quad },
    Disk(RootDisk),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigen {
    /// Index into `Spectrum::factors`.
    pub factor: usize,
    pub value: EigenValue,
    /// Index of the complex conjugate in `Spectrum::eigen`, for nonreal roots.
    pub conj: Option<usize>,
}

impl Eigen {
    pub fn is_real(&self) -> bool {
        match &self.value {
            EigenValue::Rational(_) | EigenValue::RealQuad(_) => true,
            EigenValue::ComplexQuad { .. } => false,
            EigenValue::Disk(d) => d.real,
        }
    }

    /// Exact value for real eigenvalues of degree at most 2.
    pub fn exact_real(&self) -> Option<Quad> {
        match &self.value {
            EigenValue::Rational(r) => Some(Quad::rational(r.clone())),
            EigenValue::RealQuad(q) => Some(q.clone()),
            _ => None,
        }
    }

    /// Exact `|lambda|^2` for eigenvalues of degree at most 2.
    pub fn modulus_sq_exact(&self) -> Option<Quad> {
        match &self.value {
            EigenValue::Rational(r) => Some(Quad::rational(r * r)),
            EigenValue::RealQuad(q) => Some(q * q),
            EigenValue::ComplexQuad { re, im } => {
                let im_sq = (im * im).as_rational().cloned().expect("im^2 is rational");
                Some(Quad::rational(re * re + im_sq))
            }
            EigenValue::Disk(_) => None,
        }
    }

    /// Exact `|lambda|` for eigenvalues of degree at most 2.
    pub fn modulus_exact(&self) -> Option<Quad> {
        match &self.value {
            EigenValue::Rational(r) => Some(Quad::rational(r.abs())),
            EigenValue::RealQuad(q) => Some(q.abs()),
            EigenValue::ComplexQuad { .. } => {
                let m2 = self.modulus_sq_exact()?.as_rational()?.clone();
                // sqrt(p/q) = sqrt(p*q)/q
                Some(Quad::new(
                    BigRational::zero(),
                    BigRational::new(BigInt::one(), m2.denom().clone()),
                    &(m2.numer() * m2.denom()),
                ))
            }
            EigenValue::Disk(_) => None,
        }
    }

    pub fn re(&self, prec: u32) -> Interval {
        match &self.value {
            EigenValue::Rational(r) => Interval::from_rational(r, prec),
            EigenValue::RealQuad(q) => q.to_interval(prec),
            EigenValue::ComplexQuad { re, .. } => Interval::from_rational(re, prec),
            EigenValue::Disk(d) => d.re_interval(prec),
        }
    }

    pub fn im(&self, prec: u32) -> Interval {
        match &self.value {
            EigenValue::ComplexQuad { im, .. } => im.to_interval(prec),
            EigenValue::Disk(d) => d.im_interval(prec),
            _ => Interval::zero(prec),
        }
    }

    pub fn modulus(&self, prec: u32) -> Interval {
        match (&self.value, self.modulus_exact()) {
            (EigenValue::Disk(d), _) => d.modulus(prec),
            (_, Some(q)) => q.to_interval(prec),
            _ => unreachable!(),
        }
    }

    pub fn modulus_sq(&self, prec: u32) -> Interval {
        match (&self.value, self.modulus_sq_exact()) {
            (EigenValue::Disk(d), _) => d.modulus_sq(prec),
            (_, Some(q)) => q.to_interval(prec),
            _ => unreachable!(),
        }
    }

    /// Sign of a real eigenvalue.
    pub fn real_sign(&self) -> i32 {
        assert!(self.is_real());
        match self.exact_real() {
            Some(q) => q.signum(),
            None => {
                let EigenValue::Disk(d) = &self.value else { unreachable!() };
                let re = d.re_interval(128);
                assert!(!re.contains_zero(), "real root enclosure straddles 0");
                if re.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    fn describe(&self, prec: u32) -> String {
        let (lo, hi) = self.modulus(prec).endpoints_decimal(25);
        let v = match &self.value {
            EigenValue::Rational(r) => r.to_string(),
            EigenValue::RealQuad(q) => q.to_string(),
            EigenValue::ComplexQuad { re, im } => format!("{re} + ({im})*i"),
            EigenValue::Disk(d) => format!("{:.6}{:+.6}i", d.re.to_f64(), d.im.to_f64()),
        };
        format!("{v} with modulus in [{lo}, {hi}]")
    }
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    pub charpoly: IntPoly,
    pub factors: Vec<(IntPoly, u32)>,
    pub eigen: Vec<Eigen>,
    /// Indices into `eigen` of the roots of modulus exactly `rho`.
    pub dominant: Vec<usize>,
    pub rho: CertifiedReal,
    bits: u32,
}

impl Spectrum {
    /// Working precision of the current root enclosures.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Indices into `eigen` of the roots of factor `i`.
    pub fn roots_of(&self, i: usize) -> Vec<usize> {
        (0..self.eigen.len()).filter(|&k| self.eigen[k].factor == i).collect()
    }

    /// Whether factor `i` has a root of modulus `rho`.
    pub fn factor_is_dominant(&self, i: usize) -> bool {
        self.dominant.iter().any(|&k| self.eigen[k].factor == i)
    }

    /// Recompute every numerically enclosed root at `bits`.
    pub fn refine(&mut self, bits: u32) -> Result<()> {
        self.bits = bits;
        let disks: Vec<Option<Vec<RootDisk>>> = self
            .factors
            .iter()
            .map(|(f, _)| {
                if f.deg() >= 3 {
                    complex_roots(f, bits).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<_>>()?;
        let mut seen = vec![0usize; self.factors.len()];
        for e in self.eigen.iter_mut() {
            if let (EigenValue::Disk(d), Some(list)) = (&mut e.value, &disks[e.factor]) {
                *d = list[seen[e.factor]].clone();
                seen[e.factor] += 1;
            }
        }
        Ok(())
    }
}

fn quadratic_roots(f: &IntPoly) -> [EigenValue; 2] {
    let a = f.coeff(2);
    let b = f.coeff(1);
    let c = f.coeff(0);
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    let two_a = BigInt::from(2) * &a;
    let re = BigRational::new(-&b, two_a.clone());
    let half = BigRational::new(BigInt::one(), two_a);
    if disc.is_positive() {
        let hi = Quad::new(re.clone(), half.clone(), &disc);
        let lo = Quad::new(re, -half, &disc);
        [EigenValue::RealQuad(lo), EigenValue::RealQuad(hi)]
    } else {
        let im = Quad::new(BigRational::zero(), half, &(-disc));
        [
            EigenValue::ComplexQuad { re: re.clone(), im: im.clone() },
            EigenValue::ComplexQuad { re, im: -&im },
        ]
    }
}

fn eigen_of_factors(factors: &[(IntPoly, u32)], bits: u32) -> Result<Vec<Eigen>> {
    let mut out: Vec<Eigen> = Vec::new();
    for (i, (f, _)) in factors.iter().enumerate() {
        match f.deg() {
            0 => {}
            1 => out.push(Eigen {
                factor: i,
                value: EigenValue::Rational(BigRational::new(-f.coeff(0), f.coeff(1))),
                conj: None,
            }),
            2 => {
                let [r0, r1] = quadratic_roots(f);
                let complex = matches!(r0, EigenValue::ComplexQuad { .. });
                let base = out.len();
                out.push(Eigen { factor: i, value: r0, conj: complex.then_some(base + 1) });
                out.push(Eigen { factor: i, value: r1, conj: complex.then_some(base) });
            }
            _ => {
                let disks = complex_roots(f, bits)?;
                let base = out.len();
                let n_real = disks.iter().filter(|d| d.real).count();
                for (k, d) in disks.into_iter().enumerate() {
                    let conj = if d.real {
                        None
                    } else if (k - n_real) % 2 == 0 {
                        Some(base + k + 1)
                    } else {
                        Some(base + k - 1)
                    };
                    out.push(Eigen { factor: i, value: EigenValue::Disk(d), conj });
                }
            }
        }
    }
    Ok(out)
}

/// Power sums `p_1..p_count` of the roots of `f`.
fn power_sums(f: &IntPoly, count: usize) -> Vec<BigRational> {
    let n = f.deg();
    let lc = BigRational::from_integer(f.lc());
    // e_k = (-1)^k a_{n-k} / a_n
    let e: Vec<BigRational> = (0..=n)
        .map(|k| {
            let a = BigRational::from_integer(f.coeff(n - k)) / &lc;
            if k % 2 == 0 {
                a
            } else {
                -a
            }
        })
        .collect();
    let mut p: Vec<BigRational> = vec![BigRational::zero(); count + 1];
    for k in 1..=count {
        let mut s = BigRational::zero();
        for i in 1..k.min(n + 1) {
            let t = &e[i] * &p[k - i];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        if k <= n {
            let t = &e[k] * BigRational::from_integer(BigInt::from(k));
            if k % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        p[k] = s;
    }
    p.remove(0);
    p
}

/// Squarefree part of `prod_{i,j} (y - lambda_i lambda_j)` over the roots of
/// `f`; `|lambda|^2` is a root for every root `lambda` of `f`.
pub fn product_root_poly(f: &IntPoly) -> IntPoly {
    let n = f.deg();
    let big = n * n;
    let s: Vec<BigRational> = power_sums(f, big).into_iter().map(|x| &x * &x).collect();
    let mut e = vec![BigRational::one()];
    for k in 1..=big {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let t = &e[k - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    let mut coeffs = vec![BigRational::zero(); big + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[big - k] = if k % 2 == 0 { ek } else { -ek };
    }
    let r = Poly::new(coeffs);
    let g = r.gcd(&r.derivative());
    let (sq, _) = r.divrem(&g);
    IntPoly::from_rational(&sq)
}

/// Compare `|lambda_i|` with `|lambda_j|`; `None` when the current
/// enclosures decide nothing.
fn compare(s: &Spectrum, i: usize, j: usize) -> Option<Ordering> {
    if i == j || s.eigen[i].conj == Some(j) {
        return Some(Ordering::Equal);
    }
    let (ei, ej) = (&s.eigen[i], &s.eigen[j]);
    if let (Some(a), Some(b)) = (ei.modulus_sq_exact(), ej.modulus_sq_exact()) {
        if a.is_rational() || b.is_rational() || a.d == b.d {
            return Some(a.cmp(&b));
        }
        // Distinct real quadratic fields meet only in Q, and both values are
        // irrational, so they differ; enough precision separates them.
        let mut prec = 128;
        loop {
            if let Some(o) = a.to_interval(prec).certain_cmp(&b.to_interval(prec)) {
                return Some(o);
            }
            prec *= 2;
        }
    }
    let prec = s.bits + 32;
    let (mi, mj) = (ei.modulus_sq(prec), ej.modulus_sq(prec));
    if let Some(o) = mi.certain_cmp(&mj) {
        return Some(o);
    }
    // Overlapping enclosures: try to prove equality exactly.
    let fi = &s.factors[ei.factor].0;
    let f = if ei.factor == ej.factor {
        fi.clone()
    } else {
        fi.mul(&s.factors[ej.factor].0)
    };
    if f.deg() > MAX_EXACT_TIE_DEGREE {
        return None;
    }
    let r = product_root_poly(&f);
    let hull = mi.hull(&mj);
    let count = SturmSequence::new(&r).count_closed(hull.lo(), hull.hi());
    (count == 1).then_some(Ordering::Equal)
}

/// Partition the eigenvalues into the dominant class and the rest, refining
/// enclosures as needed.
fn resolve_dominant(s: &mut Spectrum) -> Result<()> {
    loop {
        let prec = s.bits + 32;
        let mut top = 0;
        for k in 1..s.eigen.len() {
            if s.eigen[k].modulus(prec).lo() > s.eigen[top].modulus(prec).lo() {
                top = k;
            }
        }
        let mut dominant = vec![top];
        let mut undecided = None;
        let mut restart = false;
        for k in 0..s.eigen.len() {
            if k == top {
                continue;
            }
            match compare(s, k, top) {
                Some(Ordering::Less) => {}
                Some(Ordering::Equal) => dominant.push(k),
                Some(Ordering::Greater) => {
                    restart = true;
                    break;
                }
                None => undecided = Some(k),
            }
        }
        if restart {
            // An exact comparison beat the interval pick; enough precision
            // makes the interval pick agree.
            s.refine(s.bits * 2)?;
            continue;
        }
        if let Some(k) = undecided {
            if s.bits * 2 > MAX_ROOT_BITS {
                return Err(MonoError::IndistinguishableModuli {
                    first: s.eigen[top].describe(prec),
                    second: s.eigen[k].describe(prec),
                });
            }
            s.refine(s.bits * 2)?;
            continue;
        }
        dominant.sort_unstable();
        s.dominant = dominant;
        return Ok(());
    }
}

/// Spectrum of the roots of `p` (any nonzero polynomial with `p(0) != 0`).
pub fn spectrum_of_poly(p: &IntPoly) -> Result<Spectrum> {
    if p.deg() == 0 {
        return Err(MonoError::domain("constant polynomial has no roots"));
    }
    if p.coeff(0).is_zero() {
        return Err(MonoError::domain("zero is a root"));
    }
    let factors = factor_over_q(p)?;
    let eigen = eigen_of_factors(&factors, START_BITS)?;
    let mut s = Spectrum {
        charpoly: p.clone(),
        factors,
        eigen,
        dominant: Vec::new(),
        rho: CertifiedReal::from_exact(Quad::zero(), 128),
        bits: START_BITS,
    };
    resolve_dominant(&mut s)?;
    let top = s.dominant[0];
    s.rho = match s.eigen[top].modulus_exact() {
        Some(q) => CertifiedReal::from_exact(q, s.bits),
        None => loop {
            let m = s.eigen[top].modulus(s.bits + 32);
            let tol = &m.lo().abs() * &Dyadic::new(BigInt::one(), -RHO_REL_BITS);
            if m.width() <= tol {
                break CertifiedReal::from_enclosure(m);
            }
            if s.bits * 2 > MAX_ROOT_BITS {
                return Err(MonoError::budget("spectral radius enclosure did not tighten"));
            }
            s.refine(s.bits * 2)?;
        },
    };
    Ok(s)
}

pub fn spectrum(a: &IntMatrix) -> Result<Spectrum> {
    spectrum_of_poly(&charpoly(a))
}

pub fn spectral_radius(a: &IntMatrix) -> Result<CertifiedReal> {
    Ok(spectrum(a)?.rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn diagonal_and_unipotent() {
        let r = spectral_radius(&m(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(r.exact, Some(Quad::from_int(3)));
        let r = spectral_radius(&m(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(r.exact, Some(Quad::from_int(1)));
    }

    #[test]
    fn golden_ratio() {
        let r = spectral_radius(&m(&[&[1, 1], &[1, 0]])).unwrap();
        assert_eq!(r.exact.as_ref().unwrap().to_string(), "(1+sqrt(5))/2");
        assert!((r.to_f64() - 1.618033988749895).abs() < 1e-15);
    }

    #[test]
    fn rotation_has_two_dominant_roots() {
        let s = spectrum(&m(&[&[0, -1], &[1, 0]])).unwrap();
        assert_eq!(s.dominant.len(), 2);
        assert_eq!(s.rho.exact, Some(Quad::from_int(1)));
    }

    #[test]
    fn negative_and_positive_tie() {
        let s = spectrum(&m(&[&[-2, 0], &[0, 2]])).unwrap();
        assert_eq!(s.dominant.len(), 2);
    }

    #[test]
    fn cubic_radius_is_tight() {
        // companion of x^3 - 2
        let s = spectrum(&m(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert!(s.rho.exact.is_none());
        assert_eq!(s.dominant.len(), 3);
        let w = s.rho.enclosure.width().to_f64();
        assert!(w < 2f64.powi(-80));
        assert!((s.rho.to_f64() - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn tie_between_factors_of_degree_three() {
        // (x^3 - 2)(x^3 + 2): six roots of modulus 2^(1/3)
        let p = IntPoly::from_i64(&[-2, 0, 0, 1]).mul(&IntPoly::from_i64(&[2, 0, 0, 1]));
        let s = spectrum_of_poly(&p).unwrap();
        assert_eq!(s.dominant.len(), 6);
    }

    #[test]
    fn product_root_poly_contains_modulus_squared() {
        // roots of x^2 + 1: products are -1, 1, 1, -1 -> y^2 - 1
        assert_eq!(product_root_poly(&IntPoly::from_i64(&[1, 0, 1])), IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn power_of_matrix() {
        let a = m(&[&[2, 1, 0], &[1, 1, 1], &[0, 1, -1]]);
        let r = spectral_radius(&a).unwrap();
        let r3 = spectral_radius(&a.pow(3)).unwrap();
        let cubed = r.enclosure.pow_u(3);
        assert!(cubed.overlaps(&r3.enclosure));
    }
}
