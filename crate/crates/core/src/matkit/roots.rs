//! Certified enclosures of all complex roots of a squarefree integer
//! polynomial.
//!
//! Approximations come from Aberth iteration in `f64`, are polished by Newton
//! steps with exact dyadic evaluation, and are then certified with
//! Weierstrass (Braess-Hadeler) inclusion disks: with `W_i = q(z_i) / (lc *
//! prod_{j != i} (z_i - z_j))`, the disks `|z - z_i| <= n |W_i|` cover every
//! root, and any such disk that meets no other holds exactly one.

use num_bigint::BigInt;
use num_complex::Complex64;

use super::poly::IntPoly;
use super::sturm::real_roots;
use crate::error::{MonoError, Result};
use crate::numkit::{Dyadic, Interval, Round};

/// Upper limit on the working precision before giving up.
pub const MAX_ROOT_BITS: u32 = 1 << 14;

#[derive(Clone, Debug, PartialEq)]
pub struct RootDisk {
    pub re: Dyadic,
    pub im: Dyadic,
    pub radius: Dyadic,
    /// Set for roots known to be real (the center is on the axis).
    pub real: bool,
}

impl RootDisk {
    pub fn re_interval(&self, prec: u32) -> Interval {
        Interval::new(&self.re - &self.radius, &self.re + &self.radius, prec)
    }

    pub fn im_interval(&self, prec: u32) -> Interval {
        if self.real {
            return Interval::zero(prec);
        }
        Interval::new(&self.im - &self.radius, &self.im + &self.radius, prec)
    }

    fn center_abs_sq(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn modulus(&self, prec: u32) -> Interval {
        let sq = self.center_abs_sq();
        let lo = &sq.sqrt_round(prec, Round::Down) - &self.radius;
        let hi = &sq.sqrt_round(prec, Round::Up) + &self.radius;
        let lo = if lo.signum() < 0 { Dyadic::zero() } else { lo };
        Interval::new(lo.round(prec, Round::Down), hi.round(prec, Round::Up), prec)
    }

    pub fn modulus_sq(&self, prec: u32) -> Interval {
        self.modulus(prec).square()
    }

    pub fn conj(&self) -> RootDisk {
        RootDisk {
            re: self.re.clone(),
            im: -&self.im,
            radius: self.radius.clone(),
            real: self.real,
        }
    }
}

#[derive(Clone, Debug)]
struct C {
    re: Dyadic,
    im: Dyadic,
}

impl C {
    fn zero() -> C {
        C { re: Dyadic::zero(), im: Dyadic::zero() }
    }
    fn add(&self, o: &C) -> C {
        C { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &C) -> C {
        C { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &C) -> C {
        C {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
    fn conj(&self) -> C {
        C { re: self.re.clone(), im: -&self.im }
    }
    fn abs_sq(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }
    fn round_abs(&self, bits: i64) -> C {
        C { re: round_abs(&self.re, bits), im: round_abs(&self.im, bits) }
    }
}

/// Round to a multiple of roughly `2^-bits`.
fn round_abs(d: &Dyadic, bits: i64) -> Dyadic {
    if d.is_zero() {
        return Dyadic::zero();
    }
    let rel = d.magnitude_bits() + bits;
    if rel <= 0 {
        Dyadic::zero()
    } else {
        d.round(rel as u32, Round::Down)
    }
}

/// Exact values of `q` and `q'` at `z`.
fn eval_with_derivative(q: &IntPoly, z: &C) -> (C, C) {
    let mut f = C::zero();
    let mut df = C::zero();
    for c in q.coeffs().iter().rev() {
        df = df.mul(z).add(&f);
        f = f.mul(z);
        f.re = &f.re + &Dyadic::from_bigint(c);
    }
    (f, df)
}

fn aberth(q: &IntPoly) -> Result<Vec<Complex64>> {
    let n = q.deg();
    let c = q.to_f64_coeffs();
    let lc = c[n];
    if !c.iter().all(|x| x.is_finite()) || lc == 0.0 {
        return Err(MonoError::unsupported("polynomial coefficients exceed floating range"));
    }
    let a: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let eval = |z: Complex64| {
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        for &ai in a.iter().rev() {
            df = df * z + f;
            f = f * z + ai;
        }
        (f, df)
    };
    let cauchy = 1.0 + a[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let r0 = a[0].abs().powf(1.0 / n as f64).clamp(1e-3, cauchy);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (f, df) = eval(z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                worst = worst.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    Ok(z)
}

fn newton_polish(q: &IntPoly, z0: Complex64, bits: u32) -> C {
    let mut z = C {
        re: Dyadic::from_f64(z0.re),
        im: Dyadic::from_f64(z0.im),
    };
    let target = Dyadic::new(BigInt::from(1), -(bits as i64));
    let steps = 8 + 2 * (32 - (bits / 53).max(1).leading_zeros());
    for _ in 0..steps {
        let (f, df) = eval_with_derivative(q, &z);
        let den = df.abs_sq();
        if den.is_zero() {
            break;
        }
        let num = f.mul(&df.conj());
        let p = bits + 16;
        let step = C {
            re: num.re.div_round(&den, p, Round::Down),
            im: num.im.div_round(&den, p, Round::Down),
        };
        z = z.sub(&step).round_abs(bits as i64 + 16);
        if step.abs_sq() <= &target * &target {
            break;
        }
    }
    z
}

/// All roots of a squarefree `q` of positive degree. Real roots come first in
/// increasing order, then conjugate pairs, upper member first, ordered by
/// real part. Each disk has radius at most about `2^-bits` times the root's
/// size and meets no other disk.
pub fn complex_roots(q: &IntPoly, bits: u32) -> Result<Vec<RootDisk>> {
    let n = q.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    let approx = aberth(q)?;
    let mut bits = bits.max(60);
    loop {
        if let Some(disks) = certify(q, &approx, bits)? {
            return Ok(disks);
        }
        bits *= 2;
        if bits > MAX_ROOT_BITS {
            return Err(MonoError::budget(format!(
                "could not certify the complex roots of {q}"
            )));
        }
    }
}

fn certify(q: &IntPoly, approx: &[Complex64], bits: u32) -> Result<Option<Vec<RootDisk>>> {
    let n = q.deg();
    let reals = real_roots(q, bits + 8)?;
    let n_complex = n - reals.len();
    if !n_complex.is_multiple_of(2) {
        return Ok(None);
    }
    let mut upper: Vec<Complex64> = approx.iter().copied().filter(|z| z.im > 0.0).collect();
    upper.sort_by(|a, b| b.im.total_cmp(&a.im));
    if upper.len() < n_complex / 2 {
        return Ok(None);
    }
    upper.truncate(n_complex / 2);
    upper.sort_by(|a, b| a.re.total_cmp(&b.re));

    let mut centers: Vec<(C, bool)> = reals
        .iter()
        .map(|iv| (C { re: iv.midpoint(), im: Dyadic::zero() }, true))
        .collect();
    for z in &upper {
        let c = newton_polish(q, *z, bits);
        if c.im.signum() <= 0 {
            return Ok(None);
        }
        centers.push((c.clone(), false));
        centers.push((c.conj(), false));
    }

    let lc = Dyadic::from_bigint(&q.lc());
    let nn = Dyadic::from_int(n as i64);
    let prec = bits + 32;
    let mut radii = Vec::with_capacity(n);
    for (i, (zi, _)) in centers.iter().enumerate() {
        let (f, _) = eval_with_derivative(q, zi);
        let mut prod = C { re: lc.clone(), im: Dyadic::zero() };
        for (j, (zj, _)) in centers.iter().enumerate() {
            if i != j {
                prod = prod.mul(&zi.sub(zj));
            }
        }
        let den = prod.abs_sq();
        if den.is_zero() {
            return Ok(None);
        }
        let w_sq = f.abs_sq().div_round(&den, prec, Round::Up);
        let r = (&(&nn * &nn) * &w_sq).sqrt_round(prec, Round::Up);
        radii.push(r);
    }

    for i in 0..n {
        for j in i + 1..n {
            let gap = centers[i].0.sub(&centers[j].0).abs_sq();
            let s = &radii[i] + &radii[j];
            if &s * &s >= gap {
                return Ok(None);
            }
        }
    }

    let out = centers
        .into_iter()
        .zip(radii)
        .map(|((c, real), radius)| RootDisk { re: c.re, im: c.im, radius, real })
        .collect::<Vec<_>>();
    // Radii should reflect the requested accuracy; a sloppy polish that still
    // separates is refined by the caller's next round.
    let tol = Dyadic::new(BigInt::from(1), -(bits as i64) / 2);
    if out.iter().any(|d| {
        let scale = Dyadic::from_int(1).max(d.re.abs().max(d.im.abs()));
        d.radius > &tol * &scale
    }) {
        return Ok(None);
    }
    Ok(Some(out))
}
