//! Binary floating values `mant * 2^exp` with directed rounding, and closed
//! intervals built on them.
//!
//! Every real-valued quantity in the crate is carried as an [`Interval`]: a
//! pair of dyadic endpoints that is guaranteed to contain the true value.
//! Rounding always moves the lower endpoint down and the upper endpoint up.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Round {
    fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// `mant * 2^exp`, normalized so that `mant` is odd (or the value is zero
/// with `exp == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shr_round(m: &BigInt, s: u64, dir: Round) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let mag = m.magnitude();
    let floor_mag = mag >> s;
    let exact = (&floor_mag << s) == *mag;
    let toward_zero = BigInt::from_biguint(m.sign(), floor_mag);
    if exact {
        return toward_zero;
    }
    match (m.sign(), dir) {
        (Sign::Minus, Round::Down) => toward_zero - 1,
        (Sign::Plus, Round::Up) => toward_zero + 1,
        _ => toward_zero,
    }
}

fn div_round_int(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => num.div_floor(den),
        Round::Up => {
            let (q, r) = num.div_mod_floor(den);
            if r.is_zero() {
                q
            } else {
                q + 1
            }
        }
    }
}

fn bits_of(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    /// Exact value of a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, exp) = if e == 0 { (frac, -1074) } else { (frac | (1i64 << 52), e - 1075) };
        Dyadic::new(BigInt::from(sign * m), exp)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.magnitude().trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant = BigInt::from_biguint(self.mant.sign(), self.mant.magnitude() >> tz);
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Position of the most significant bit: the value lies in
    /// `[2^(m-1), 2^m)` in magnitude.
    pub fn magnitude_bits(&self) -> i64 {
        bits_of(&self.mant) as i64 + self.exp
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let b = bits_of(&self.mant);
        if b <= prec as u64 {
            return self.clone();
        }
        let s = b - prec as u64;
        Dyadic::new(shr_round(&self.mant, s, dir), self.exp + s as i64)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as u64))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    /// Round a rational to `prec` bits in direction `dir`.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        if q.is_zero() {
            return Dyadic::zero();
        }
        let nb = bits_of(q.numer()) as i64;
        let db = bits_of(q.denom()) as i64;
        let k = prec as i64 - (nb - db) + 1;
        let (num, den) = if k >= 0 {
            (q.numer() << (k as u64), q.denom().clone())
        } else {
            (q.numer().clone(), q.denom() << ((-k) as u64))
        };
        Dyadic::new(div_round_int(&num, &den, dir), -k).round(prec, dir)
    }

    /// `self / other` rounded to `prec` bits.
    pub fn div_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let k = prec as i64 + bits_of(&other.mant) as i64 - bits_of(&self.mant) as i64 + 2;
        let k = k.max(0);
        let num = &self.mant << (k as u64);
        let q = div_round_int(&num, &other.mant, dir);
        Dyadic::new(q, self.exp - other.exp - k).round(prec, dir)
    }

    /// Square root of a nonnegative value, rounded to `prec` bits.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(self.signum() >= 0, "square root of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let b = bits_of(&self.mant) as i64;
        let mut t = (2 * prec as i64 + 4 - b).max(0);
        if (self.exp - t).rem_euclid(2) != 0 {
            t += 1;
        }
        let m = self.mant.magnitude() << (t as u64);
        let s = m.sqrt();
        let s = if dir == Round::Up && &s * &s != m {
            s + 1u32
        } else {
            s
        };
        Dyadic::new(BigInt::from(s), (self.exp - t) / 2).round(prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = bits_of(&self.mant) as i64;
        let shift = (b - 60).max(0);
        let m = shr_round(&self.mant, shift as u64, Round::Down)
            .to_f64()
            .unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -2000 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (s1, s2) = (self.signum(), other.signum());
        if s1 != s2 {
            return s1.cmp(&s2);
        }
        if s1 == 0 {
            return Ordering::Equal;
        }
        let (m1, m2) = (self.magnitude_bits(), other.magnitude_bits());
        if m1 != m2 {
            let mag = m1.cmp(&m2);
            return if s1 > 0 { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &other.mant << ((other.exp - e) as u64);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &other.mant << ((other.exp - e) as u64);
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, other: &Dyadic) -> Dyadic {
        self + &(-other)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints. `prec` is the number of
/// significant bits endpoints are rounded to after each operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, prec }
    }

    pub fn point(d: Dyadic, prec: u32) -> Self {
        Interval {
            lo: d.round(prec, Round::Down),
            hi: d.round(prec, Round::Up),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Interval::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Interval::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(n), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Interval::point(Dyadic::from_bigint(n), prec)
    }

    pub fn from_biguint(n: &BigUint, prec: u32) -> Self {
        Interval::from_bigint(&BigInt::from(n.clone()), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    /// Smallest interval containing both endpoints given as rationals.
    pub fn from_rational_bounds(lo: &BigRational, hi: &BigRational, prec: u32) -> Self {
        Interval::new(
            Dyadic::from_rational(lo, prec, Round::Down),
            Dyadic::from_rational(hi, prec, Round::Up),
            prec,
        )
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Interval {
        Interval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    /// Ordering if the intervals are disjoint (or both the same point).
    pub fn certain_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            Interval {
                lo: Dyadic::zero(),
                hi: (-&self.lo).max(self.hi.clone()),
                prec: self.prec,
            }
        }
    }

    /// `max(0, self)`.
    pub fn max_zero(&self) -> Interval {
        self.max(&Interval::zero(self.prec))
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn recip(&self) -> Interval {
        Interval::one(self.prec).div(self)
    }

    /// Division; panics if the divisor contains zero.
    pub fn div(&self, other: &Interval) -> Interval {
        self.checked_div(other)
            .expect("interval division by an interval containing zero")
    }

    pub fn checked_div(&self, other: &Interval) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        let prec = self.prec.max(other.prec);
        let cands = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = cands
            .iter()
            .map(|(a, b)| a.div_round(b, prec, Round::Down))
            .min()
            .unwrap();
        let hi = cands
            .iter()
            .map(|(a, b)| a.div_round(b, prec, Round::Up))
            .max()
            .unwrap();
        Some(Interval { lo, hi, prec })
    }

    pub fn div_int(&self, n: i64) -> Interval {
        self.div(&Interval::from_int(n, self.prec))
    }

    pub fn mul_int(&self, n: i64) -> Interval {
        self * &Interval::from_int(n, self.prec)
    }

    pub fn square(&self) -> Interval {
        let a = self.abs();
        &a * &a
    }

    pub fn pow_u(&self, e: u64) -> Interval {
        if e == 0 {
            return Interval::one(self.prec);
        }
        if self.contains_zero() && !self.is_point() {
            let mut acc = self.clone();
            for _ in 1..e {
                acc = &acc * self;
            }
            return acc;
        }
        let mut base = self.abs();
        let mut acc = Interval::one(self.prec);
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        if self.is_negative() && e % 2 == 1 {
            -acc
        } else {
            acc
        }
    }

    /// Square root; the interval must not contain negative values below zero.
    pub fn sqrt(&self) -> Interval {
        assert!(self.lo.signum() >= 0, "square root of a possibly-negative interval");
        Interval {
            lo: self.lo.sqrt_round(self.prec, Round::Down),
            hi: self.hi.sqrt_round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.midpoint().to_rational(), digits)
    }

    /// `[lo, hi]` as decimal strings with `digits` significant digits,
    /// lower endpoint rounded down and upper rounded up.
    pub fn endpoints_decimal(&self, digits: usize) -> (String, String) {
        (
            format_decimal_dir(&self.lo.to_rational(), digits, Round::Down),
            format_decimal_dir(&self.hi.to_rational(), digits, Round::Up),
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.endpoints_decimal(17);
        write!(f, "[{lo}, {hi}]")
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, other: &Interval) -> Interval {
        let prec = self.prec.max(other.prec);
        Interval {
            lo: (&self.lo + &other.lo).round(prec, Round::Down),
            hi: (&self.hi + &other.hi).round(prec, Round::Up),
            prec,
        }
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, other: &Interval) -> Interval {
        let prec = self.prec.max(other.prec);
        Interval {
            lo: (&self.lo - &other.hi).round(prec, Round::Down),
            hi: (&self.hi - &other.lo).round(prec, Round::Up),
            prec,
        }
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, other: &Interval) -> Interval {
        let prec = self.prec.max(other.prec);
        let p = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = p.iter().min().unwrap().round(prec, Round::Down);
        let hi = p.iter().max().unwrap().round(prec, Round::Up);
        Interval { lo, hi, prec }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, other: Interval) -> Interval {
                (&self).$m(&other)
            }
        }
        impl<'a> $tr<&'a Interval> for Interval {
            type Output = Interval;
            fn $m(self, other: &Interval) -> Interval {
                (&self).$m(other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// Digits and decimal exponent of `|q|` rounded to `digits` significant
/// digits: `|q| ~ d.ddd * 10^e10`.
fn decimal_digits(q: &BigRational, digits: usize, dir: Round) -> (BigInt, i64) {
    let nb = bits_of(q.numer()) as f64;
    let db = bits_of(q.denom()) as f64;
    let mut e10 = ((nb - db) * std::f64::consts::LOG10_2).floor() as i64;
    let absq = q.abs();
    for _ in 0..8 {
        let s = digits as i64 - 1 - e10;
        let scaled = if s >= 0 {
            &absq * BigRational::from_integer(pow10(s as u32))
        } else {
            &absq / BigRational::from_integer(pow10((-s) as u32))
        };
        let n = match dir {
            Round::Down => scaled.floor().to_integer(),
            Round::Up => scaled.ceil().to_integer(),
        };
        if n >= pow10(digits as u32) {
            e10 += 1;
            continue;
        }
        if n < pow10(digits as u32 - 1) {
            e10 -= 1;
            continue;
        }
        return (n, e10);
    }
    let s = digits as i64 - 1 - e10;
    let scaled = if s >= 0 {
        &absq * BigRational::from_integer(pow10(s as u32))
    } else {
        &absq / BigRational::from_integer(pow10((-s) as u32))
    };
    (scaled.round().to_integer(), e10)
}

fn render(neg: bool, n: &BigInt, e10: i64, digits: usize) -> String {
    let s = n.to_string();
    let sign = if neg { "-" } else { "" };
    if (-6..21).contains(&e10) {
        let body = if e10 >= 0 {
            let int_len = (e10 + 1) as usize;
            if s.len() <= int_len {
                format!("{}{}", s, "0".repeat(int_len - s.len()))
            } else {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e10 - 1) as usize), s)
        };
        let body = if body.contains('.') {
            body.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            body
        };
        format!("{sign}{body}")
    } else {
        let _ = digits;
        let mant = if s.len() > 1 {
            let frac = s[1..].trim_end_matches('0');
            if frac.is_empty() {
                s[..1].to_string()
            } else {
                format!("{}.{}", &s[..1], frac)
            }
        } else {
            s
        };
        format!("{sign}{mant}e{e10}")
    }
}

/// Round-to-nearest decimal string with `digits` significant digits.
pub fn format_decimal(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let nb = bits_of(q.numer()) as f64;
    let db = bits_of(q.denom()) as f64;
    let mut e10 = ((nb - db) * std::f64::consts::LOG10_2).floor() as i64;
    let absq = q.abs();
    let mut n = BigInt::zero();
    for _ in 0..8 {
        let s = digits as i64 - 1 - e10;
        let scaled = if s >= 0 {
            &absq * BigRational::from_integer(pow10(s as u32))
        } else {
            &absq / BigRational::from_integer(pow10((-s) as u32))
        };
        n = scaled.round().to_integer();
        if n >= pow10(digits as u32) {
            e10 += 1;
            continue;
        }
        if n < pow10(digits as u32 - 1) {
            e10 -= 1;
            continue;
        }
        break;
    }
    render(q.is_negative(), &n, e10, digits)
}

/// Directed decimal rendering: the printed value is `<= q` for `Down` and
/// `>= q` for `Up`.
pub fn format_decimal_dir(q: &BigRational, digits: usize, dir: Round) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let neg = q.is_negative();
    // Rounding the magnitude in the opposite direction for negative values.
    let mag_dir = if neg { dir.flip() } else { dir };
    let (n, e10) = decimal_digits(q, digits, mag_dir);
    render(neg, &n, e10, digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_enclosure_contains_value() {
        let third = rat(1, 3);
        let iv = Interval::from_rational(&third, 64);
        assert!(iv.contains_rational(&third));
        assert!(!iv.is_point());
        let w = iv.width().to_rational();
        assert!(w < rat(1, 1 << 60));
    }

    #[test]
    fn directed_rounding_brackets_division() {
        let a = Dyadic::from_int(1);
        let b = Dyadic::from_int(7);
        let lo = a.div_round(&b, 80, Round::Down).to_rational();
        let hi = a.div_round(&b, 80, Round::Up).to_rational();
        assert!(lo < rat(1, 7) && rat(1, 7) < hi);
    }

    #[test]
    fn sqrt_two_enclosure() {
        let two = Interval::from_int(2, 128);
        let s = two.sqrt();
        let sq = s.square();
        assert!(sq.contains_rational(&rat(2, 1)));
        assert!((s.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn exact_square_root_is_a_point() {
        let nine = Interval::from_int(9, 64);
        assert_eq!(nine.sqrt(), Interval::from_int(3, 64));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&rat(1, 3), 6), "0.333333");
        assert_eq!(format_decimal(&rat(-22, 7), 4), "-3.143");
        assert_eq!(format_decimal(&rat(12, 1), 15), "12");
        let big = BigRational::from_integer(pow10(30) * BigInt::from(3));
        assert_eq!(format_decimal(&big, 3), "3e30");
        assert_eq!(format_decimal_dir(&rat(2, 3), 3, Round::Down), "0.666");
        assert_eq!(format_decimal_dir(&rat(2, 3), 3, Round::Up), "0.667");
        assert_eq!(format_decimal_dir(&rat(-2, 3), 3, Round::Down), "-0.667");
    }

    #[test]
    fn ordering_of_dyadics() {
        let a = Dyadic::new(BigInt::from(3), -2);
        let b = Dyadic::new(BigInt::from(1), 0);
        assert!(a < b);
        assert!(-&a > -&b);
        assert_eq!(Dyadic::new(BigInt::from(4), 0), Dyadic::new(BigInt::from(1), 2));
    }
}
