//! Certified real and complex interval arithmetic on dyadic endpoints.
//!
//! An [`Interval`] at precision `p` stores integers `lo <= hi` and denotes the
//! closed set `[lo / 2^p, hi / 2^p]`. Every operation rounds outward, so the
//! result always encloses the exact image of the operands.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Extra bits carried internally when evaluating transcendental constants.
const GUARD_BITS: u32 = 32;

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn floor_shr(a: &BigInt, bits: u32) -> BigInt {
    floor_div(a, &pow2(bits))
}

fn ceil_shr(a: &BigInt, bits: u32) -> BigInt {
    ceil_div(a, &pow2(bits))
}

/// Smallest `r` with `r^k >= m` for `m >= 0`.
fn ceil_root(m: &BigInt, k: u32) -> BigInt {
    let r = m.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *m {
        r
    } else {
        r + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

impl Interval {
    fn raw(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::raw(BigInt::zero(), BigInt::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(&BigInt::one(), prec)
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        let v = n << prec as usize;
        Self::raw(v.clone(), v, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_int(&BigInt::from(n), prec)
    }

    /// Tightest dyadic enclosure of `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let scaled = num << prec as usize;
        Self::raw(floor_div(&scaled, &den), ceil_div(&scaled, &den), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec)
    }

    /// Enclosure of an `f64` (exact whenever the float fits in `prec` fractional bits).
    pub fn from_f64(x: f64, prec: u32) -> Option<Self> {
        BigRational::from_float(x).map(|q| Self::from_rational(&q, prec))
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow2(self.prec))
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow2(self.prec))
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo().to_f64().unwrap_or(f64::NEG_INFINITY)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi().to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn mid_f64(&self) -> f64 {
        BigRational::new(&self.lo + &self.hi, pow2(self.prec + 1))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Upper bound on the width `hi - lo`.
    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, pow2(self.prec))
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64().unwrap_or(f64::INFINITY)
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> BigRational {
        let m = self.lo.abs().max(self.hi.abs());
        BigRational::new(m, pow2(self.prec))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo() <= q && q <= &self.hi()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified sign, or `None` when the interval straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Re-express at another precision, rounding outward when coarsening.
    pub fn with_prec(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = (prec - self.prec) as usize;
                Self::raw(&self.lo << s, &self.hi << s, prec)
            }
            Ordering::Less => {
                let s = self.prec - prec;
                Self::raw(floor_shr(&self.lo, s), ceil_shr(&self.hi, s), prec)
            }
        }
    }

    fn check_prec(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "interval precision mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_prec(other);
        Self::raw(&self.lo + &other.lo, &self.hi + &other.hi, self.prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_prec(other);
        Self::raw(&self.lo - &other.hi, &self.hi - &other.lo, self.prec)
    }

    pub fn neg(&self) -> Self {
        Self::raw(-&self.hi, -&self.lo, self.prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_prec(other);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        Self::raw(floor_shr(min, self.prec), ceil_shr(max, self.prec), self.prec)
    }

    pub fn square(&self) -> Self {
        if self.contains_zero() {
            let m = self.lo.abs().max(self.hi.abs());
            Self::raw(BigInt::zero(), ceil_shr(&(&m * &m), self.prec), self.prec)
        } else {
            self.mul(self)
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        let a = &self.lo * n;
        let b = &self.hi * n;
        if a <= b {
            Self::raw(a, b, self.prec)
        } else {
            Self::raw(b, a, self.prec)
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.mul_int(q.numer()).div_int(q.denom())
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, n: &BigInt) -> Self {
        assert!(!n.is_zero(), "division by zero");
        if n.is_positive() {
            Self::raw(floor_div(&self.lo, n), ceil_div(&self.hi, n), self.prec)
        } else {
            let m = -n;
            Self::raw(floor_div(&-&self.hi, &m), ceil_div(&-&self.lo, &m), self.prec)
        }
    }

    /// Division; `None` when the divisor contains zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.check_prec(other);
        if other.contains_zero() {
            return None;
        }
        let p = self.prec as usize;
        let mut lows = Vec::with_capacity(4);
        let mut highs = Vec::with_capacity(4);
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let (num, den) = if b.is_negative() { (-(a << p), -b) } else { (a << p, b.clone()) };
                lows.push(floor_div(&num, &den));
                highs.push(ceil_div(&num, &den));
            }
        }
        Some(Self::raw(
            lows.into_iter().min().unwrap(),
            highs.into_iter().max().unwrap(),
            self.prec,
        ))
    }

    /// Square root of the nonnegative part; `None` if the interval is entirely negative.
    pub fn sqrt(&self) -> Option<Self> {
        if self.hi.is_negative() {
            return None;
        }
        let p = self.prec as usize;
        let lo = if self.lo.is_positive() { (&self.lo << p).sqrt() } else { BigInt::zero() };
        let hi = ceil_root(&(&self.hi << p), 2);
        Some(Self::raw(lo, hi, self.prec))
    }

    /// Real `k`-th root of a positive interval; `None` unless `lo > 0`.
    pub fn nth_root(&self, k: u32) -> Option<Self> {
        assert!(k >= 1);
        if !self.lo.is_positive() {
            return None;
        }
        let shift = (self.prec as usize) * (k as usize - 1);
        let lo = (&self.lo << shift).nth_root(k);
        let hi = ceil_root(&(&self.hi << shift), k);
        Some(Self::raw(lo, hi, self.prec))
    }

    /// Enclosure of `|x|`.
    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            Self::raw(BigInt::zero(), self.lo.abs().max(self.hi.abs()), self.prec)
        } else if self.hi.is_negative() || self.hi.is_zero() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Self) -> Self {
        self.check_prec(other);
        Self::raw(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            self.prec,
        )
    }

    /// Widen by `[-r, r]` for a nonnegative rational `r`.
    pub fn inflate(&self, r: &BigRational) -> Self {
        let e = Self::from_rational(r, self.prec);
        Self::raw(&self.lo - &e.hi, &self.hi + &e.hi, self.prec)
    }

    /// The constant pi.
    pub fn pi(prec: u32) -> Self {
        let wp = prec + GUARD_BITS;
        // pi = 16 atan(1/5) - 4 atan(1/239)
        let a = atan_inv(5, wp).mul_int(&BigInt::from(16));
        let b = atan_inv(239, wp).mul_int(&BigInt::from(4));
        a.sub(&b).with_prec(prec)
    }

    /// `(cos, sin)` of `2 pi k / n`.
    pub fn cos_sin_turn(k: i64, n: u64, prec: u32) -> (Self, Self) {
        assert!(n >= 1);
        let n_i = n as i64;
        let k = k.rem_euclid(n_i);
        // Fold into [0, pi]; the sine flips sign on the way back.
        let (k, flip) = if 2 * k > n_i { (n_i - k, true) } else { (k, false) };
        if k == 0 {
            return (Self::one(prec), Self::zero(prec));
        }
        let wp = prec + GUARD_BITS;
        let theta = Self::pi(wp)
            .mul_int(&BigInt::from(2 * k))
            .div_int(&BigInt::from(n));
        let (c, s) = cos_sin_taylor(&theta);
        let s = if flip { s.neg() } else { s };
        (c.with_prec(prec), s.with_prec(prec))
    }

    /// Scientific rendering of the midpoint with `digits` significant digits.
    pub fn to_scientific(&self, digits: usize) -> String {
        let mid = BigRational::new(&self.lo + &self.hi, pow2(self.prec + 1));
        rational_to_scientific(&mid, digits)
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let mid = BigRational::new(&self.lo + &self.hi, pow2(self.prec + 1));
        rational_to_decimal(&mid, digits)
    }
}

/// Render a rational with a fixed number of fractional digits (rounded toward zero).
pub fn rational_to_decimal(q: &BigRational, digits: usize) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (a.numer() * &scale) / a.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

/// Render a rational as `d.ddd e-N` with `digits` significant digits (truncated).
pub fn rational_to_scientific(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let sign = if q.is_negative() { "-" } else { "" };
    let a = q.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    // estimate floor(log10 |q|) from bit lengths, then correct
    let bits = a.numer().bits() as i64 - a.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |k: i64| -> BigRational {
        let p = BigRational::from_integer(num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize));
        if k >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let mut m = &a / pow10(e);
    while m >= ten {
        m /= &ten;
        e += 1;
    }
    while m < BigRational::one() {
        m *= &ten;
        e -= 1;
    }
    let body = rational_to_decimal(&m, digits.saturating_sub(1));
    format!("{sign}{body}e{e}")
}

/// `atan(1/k)` by its alternating Taylor series.
fn atan_inv(k: u64, wp: u32) -> Interval {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let threshold = BigRational::new(BigInt::one(), pow2(wp));
    let mut sum = Interval::zero(wp);
    let mut kpow = k.clone();
    let mut j: u64 = 0;
    loop {
        let den = BigInt::from(2 * j + 1) * &kpow;
        let term = BigRational::new(BigInt::one(), den.clone());
        if term < threshold {
            // Alternating with decreasing terms: the tail is bounded by the first omitted term.
            return sum.inflate(&term);
        }
        let t = Interval::from_ratio(&BigInt::one(), &den, wp);
        sum = if j % 2 == 0 { sum.add(&t) } else { sum.sub(&t) };
        kpow *= &k2;
        j += 1;
    }
}

/// Taylor enclosures of cos and sin on an interval inside `[0, pi]`.
fn cos_sin_taylor(theta: &Interval) -> (Interval, Interval) {
    let wp = theta.prec;
    // a few ulps: outward rounding keeps every term at least one ulp wide
    let threshold = BigRational::new(BigInt::one(), pow2(wp - 4));
    let t2 = theta.square();
    let mut c_term = Interval::one(wp);
    let mut s_term = theta.clone();
    let mut c_sum = Interval::zero(wp);
    let mut s_sum = Interval::zero(wp);
    let mut j: u64 = 0;
    loop {
        // Lagrange remainder after j terms is bounded by the j-th term's magnitude.
        if j >= 2 && c_term.mag() <= threshold && s_term.mag() <= threshold {
            return (c_sum.inflate(&c_term.mag()), s_sum.inflate(&s_term.mag()));
        }
        if j % 2 == 0 {
            c_sum = c_sum.add(&c_term);
            s_sum = s_sum.add(&s_term);
        } else {
            c_sum = c_sum.sub(&c_term);
            s_sum = s_sum.sub(&s_term);
        }
        j += 1;
        c_term = c_term.mul(&t2).div_int(&BigInt::from((2 * j - 1) * (2 * j)));
        s_term = s_term.mul(&t2).div_int(&BigInt::from((2 * j) * (2 * j + 1)));
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo_f64(), self.hi_f64())
    }
}

/// Rectangular complex interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        assert_eq!(re.prec, im.prec);
        ComplexInterval { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(Interval::zero(prec), Interval::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::new(Interval::one(prec), Interval::zero(prec))
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        Self::new(Interval::from_rational(re, prec), Interval::from_rational(im, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Option<Self> {
        Some(Self::new(Interval::from_f64(re, prec)?, Interval::from_f64(im, prec)?))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Self::new(re, im)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(self.re.mul_rational(q), self.im.mul_rational(q))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self) -> Interval {
        self.re.square().add(&self.im.square())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    /// True if some point of the rectangle lies within `tol` of `(re, im)` in each coordinate.
    pub fn near_f64(&self, re: f64, im: f64, tol: f64) -> bool {
        self.re.lo_f64() - tol <= re
            && re <= self.re.hi_f64() + tol
            && self.im.lo_f64() - tol <= im
            && im <= self.im.hi_f64() + tol
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}
