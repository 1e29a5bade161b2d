//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! A [`CycNum`] is stored in the power basis `1, zeta, ..., zeta^(phi(n)-1)`
//! reduced modulo the n-th cyclotomic polynomial, so two values at the same
//! conductor are equal iff their coefficient vectors are. Internally the
//! coefficients share one positive denominator.

mod embed;
mod table;

pub use embed::{cyc_embed, Embedder, MIN_EMBED_BITS};
pub use table::{euler_phi, lcm};
pub(crate) use table::table;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::json::JsonRational;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CycNum {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        let phi = euler_phi(n);
        CycNum { n, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn one(n: u32) -> Self {
        Self::root_of_unity(n, 0)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(v.into()))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        CycNum { n: 1, num: vec![q.numer().clone()], den: q.denom().clone() }
    }

    /// `zeta_n^k`, with `k` reduced mod `n`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let t = table(n);
        let k = k.rem_euclid(n as i64) as usize;
        CycNum { n, num: t.powers[k].iter().map(|&c| BigInt::from(c)).collect(), den: BigInt::one() }
    }

    /// Value of `sum_k coeffs[k] zeta_n^k` for any number of coefficients.
    pub fn from_power_coeffs(n: u32, coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut v = vec![BigInt::zero(); n as usize];
        for (k, c) in coeffs.iter().enumerate() {
            v[k % n as usize] += c.numer() * (&den / c.denom());
        }
        Self::from_group_ring(n, &v, den)
    }

    /// Reduce an integer vector indexed by exponents `0..n` (an element of
    /// `Z[x]/(x^n - 1)`) into the field, dividing by `den`.
    pub(crate) fn from_group_ring(n: u32, v: &[BigInt], den: BigInt) -> Self {
        debug_assert_eq!(v.len(), n as usize);
        let t = table(n);
        let mut num: Vec<BigInt> = v[..t.phi].to_vec();
        for (k, c) in v.iter().enumerate().skip(t.phi) {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(&t.powers[k]) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        let mut out = CycNum { n, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Exact rational coefficients in the power basis (length `phi(n)`).
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.is_rational() || self.conj() == *self
    }

    /// Re-express in `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m % self.n == 0, "conductor {m} is not a multiple of {}", self.n);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut v = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Self::from_group_ring(m, &v, self.den.clone())
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.n, b.n);
        (a.lift(m), b.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        if self.n != other.n {
            let (a, b) = Self::aligned(self, other);
            return a.combine(&b, subtract);
        }
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(x, y)| if subtract { x - y } else { x + y })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(x, y)| {
                    let l = x * &other.den;
                    let r = y * &self.den;
                    if subtract { l - r } else { l + r }
                })
                .collect()
        };
        let den = if self.den == other.den { self.den.clone() } else { &self.den * &other.den };
        let mut out = CycNum { n: self.n, num, den };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        CycNum { n: self.n, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.n != other.n {
            if self.n == 1 {
                return other.scale(&BigRational::new(self.num[0].clone(), self.den.clone()));
            }
            if other.n == 1 {
                return self.scale(&BigRational::new(other.num[0].clone(), other.den.clone()));
            }
            let (a, b) = Self::aligned(self, other);
            return a.mul(&b);
        }
        let n = self.n as usize;
        let mut v = vec![BigInt::zero(); n];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    v[(i + j) % n] += x * y;
                }
            }
        }
        Self::from_group_ring(self.n, &v, &self.den * &other.den)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = CycNum {
            n: self.n,
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    /// Image under the automorphism `zeta_n -> zeta_n^s`, `gcd(s, n) = 1`.
    pub fn galois(&self, s: i64) -> Self {
        let n = self.n as i64;
        debug_assert!(n == 1 || s.rem_euclid(n).gcd(&n) == 1);
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[((i as i64) * s).rem_euclid(n) as usize] += c;
            }
        }
        Self::from_group_ring(self.n, &v, self.den.clone())
    }

    /// Complex conjugate: `zeta_n -> zeta_n^(n-1)`.
    pub fn conj(&self) -> Self {
        if self.n <= 2 {
            return self.clone();
        }
        self.galois(-1)
    }

    /// `|a|^2 = a * conj(a)`.
    pub fn norm_sqr(&self) -> Self {
        self.mul(&self.conj())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            let mut out = Self::zero(self.n);
            out.num[0] = q.denom().clone();
            out.den = q.numer().clone();
            out.normalize();
            return Ok(out);
        }
        let t = table(self.n);
        let modulus: Vec<BigRational> =
            t.poly.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let a: Vec<BigRational> = self.coeffs();
        let s = poly_inverse_mod(&a, &modulus);
        Ok(Self::from_power_coeffs(self.n, &s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Re-express at the smallest conductor whose field contains the value.
    pub fn compress(&self) -> Self {
        if self.is_rational() {
            return CycNum { n: 1, num: vec![self.num[0].clone()], den: self.den.clone() };
        }
        let n = self.n;
        for d in (2..n).filter(|d| n % d == 0) {
            if let Some(v) = self.restrict_to(d) {
                return v;
            }
        }
        self.clone()
    }

    fn restrict_to(&self, d: u32) -> Option<Self> {
        let n = self.n as i64;
        // in Q(zeta_d) iff fixed by every automorphism that is trivial on zeta_d
        for s in 1..n {
            if s.gcd(&n) == 1 && s.rem_euclid(d as i64) == 1 % d as i64 && self.galois(s) != *self {
                return None;
            }
        }
        let t = table(self.n);
        let pd = euler_phi(d);
        let step = (self.n / d) as usize;
        // Solve sum_i c_i zeta_n^(i*step) = self for the phi(d) unknowns c_i.
        let rows = t.phi;
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..pd)
                    .map(|i| BigRational::from_integer(t.powers[i * step][r].into()))
                    .collect();
                row.push(BigRational::new(self.num[r].clone(), self.den.clone()));
                row
            })
            .collect();
        let sol = solve_consistent(&mut m, pd)?;
        Some(Self::from_power_coeffs(d, &sol))
    }

    /// Append a representation-level key (valid only for comparing values at equal conductor).
    pub(crate) fn push_key(&self, out: &mut Vec<BigInt>) {
        out.push(self.den.clone());
        out.extend(self.num.iter().cloned());
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Self::aligned(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum::add(self, rhs)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum::sub(self, rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        CycNum::mul(self, rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("ζ{}", self.n),
                _ => format!("ζ{}^{}", self.n, k),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{a}{root}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumJson {
    n: u32,
    c: Vec<JsonRational>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumJson { n: self.n, c: self.coeffs().iter().map(JsonRational::from_rational).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CycNumJson::deserialize(d)?;
        if raw.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = raw
            .c
            .iter()
            .map(|r| r.to_rational().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycNum::from_power_coeffs(raw.n, &coeffs))
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m` by the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    debug_assert_eq!(r0.len(), 1, "gcd with an irreducible modulus must be constant");
    let g = r0[0].clone();
    s0.iter().map(|c| c / &g).collect()
}

/// Gaussian elimination on an augmented system known to be consistent.
fn solve_consistent(m: &mut [Vec<BigRational>], unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let src = m[pivot_row].clone();
                for (v, s) in m[r].iter_mut().zip(src.iter()) {
                    *v -= &factor * s;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][unknowns].clone();
    }
    Some(sol)
}

impl PartialOrd for CycNum {
    /// Orders only rational values; irrational pairs are incomparable.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.to_rational(), other.to_rational()) {
            (Some(a), Some(b)) => Some(a.cmp(&b)),
            _ if self == other => Some(Ordering::Equal),
            _ => None,
        }
    }
}
