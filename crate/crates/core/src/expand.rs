//! Expansion of `1 - prod_f (1 - L_f(z, conj(w)))` for bilinear forms `L_f`
//! with cyclotomic coefficients.
//!
//! Coefficients live in the group ring `Z[x]/(x^N - 1)` during the product, so
//! multiplying by a root of unity is a cyclic shift. Denominators are cleared
//! up front by scaling every form by a common `D`; the degree-`d` part of the
//! product then carries a factor `D^d` that is divided out at the end, along
//! with the reduction modulo the N-th cyclotomic polynomial. Small products run
//! on `i128` when a coefficient bound proves that nothing can overflow.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{lcm, CycNum};
use crate::hermpoly::{BiMonomial, Form, HermPoly};
use crate::{Error, Result};

/// One term `coeff * z_z * conj(w_w)` of a bilinear form, with `coeff` given
/// as a sparse group-ring element `sum k * x^shift`.
#[derive(Clone, Debug)]
pub(crate) struct FormTerm {
    pub z: usize,
    pub w: usize,
    pub coeff: Vec<(usize, BigInt)>,
}

/// Integral bilinear forms over `Z[x]/(x^n - 1)`, all scaled by `scale`.
#[derive(Clone, Debug)]
pub(crate) struct FormBatch {
    pub dim: usize,
    pub n: u32,
    pub scale: BigInt,
    pub forms: Vec<Vec<FormTerm>>,
}

impl FormBatch {
    /// Forms `<g z, w> = sum_{i,j} g_ij z_j conj(w_i)` for each matrix.
    pub fn from_matrices(dim: usize, mats: &[Vec<Vec<CycNum>>]) -> Result<Self> {
        let mut n = 1u32;
        for m in mats {
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(Error::DimensionMismatch { expected: dim, found: m.len() });
            }
            for c in m.iter().flatten() {
                n = lcm(n, c.conductor());
            }
        }
        let mut entries = Vec::with_capacity(mats.len());
        for m in mats {
            let mut terms = Vec::new();
            for (i, row) in m.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        terms.push((j, i, c.clone()));
                    }
                }
            }
            entries.push(terms);
        }
        Self::from_entries(dim, n, entries)
    }

    /// Forms given directly as `(z index, w index, coefficient)` lists.
    pub fn from_entries(dim: usize, n: u32, forms: Vec<Vec<(usize, usize, CycNum)>>) -> Result<Self> {
        let mut n = n;
        for t in forms.iter().flatten() {
            n = lcm(n, t.2.conductor());
        }
        let roots = RootIndex::new(n);
        let mut scale = BigInt::one();
        for t in forms.iter().flatten() {
            scale = scale.lcm(t.2.lift(n).denominator());
        }
        let mut out = Vec::with_capacity(forms.len());
        for f in forms {
            let mut terms = Vec::with_capacity(f.len());
            for (z, w, c) in f {
                if z >= dim || w >= dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: z.max(w) + 1 });
                }
                let c = c.lift(n);
                let coeff = match roots.find(&c) {
                    Some((k, sign)) => vec![(k, &scale * sign)],
                    None => {
                        let mult = &scale / c.denominator();
                        c.numerators()
                            .iter()
                            .enumerate()
                            .filter(|(_, v)| !v.is_zero())
                            .map(|(k, v)| (k, v * &mult))
                            .collect()
                    }
                };
                terms.push(FormTerm { z, w, coeff });
            }
            out.push(terms);
        }
        Ok(FormBatch { dim, n, scale, forms: out })
    }

    /// `log2` of `prod_f (1 + |L_f|_1)`, an upper bound on every coefficient
    /// of every partial product.
    fn log2_bound(&self) -> f64 {
        self.forms
            .iter()
            .map(|f| {
                let l1: f64 = f
                    .iter()
                    .flat_map(|t| t.coeff.iter())
                    .map(|(_, k)| k.abs().to_f64().unwrap_or(f64::INFINITY))
                    .sum();
                (1.0 + l1).log2()
            })
            .sum()
    }

    /// `1 - prod_f (1 - L_f)` as a polynomial in `(z, conj(w))`.
    pub fn product_complement(&self, form: Form) -> Result<HermPoly> {
        let raw = if self.log2_bound() < 125.0 {
            let forms = self.convert(|k| k.to_i128().expect("bounded"));
            expand::<i128>(self.dim, self.n as usize, &forms)
        } else {
            let forms = self.convert(|k| k.clone());
            expand::<BigInt>(self.dim, self.n as usize, &forms)
        };
        let mut den_pows: Vec<BigInt> = vec![BigInt::one()];
        let mut terms = Vec::with_capacity(raw.len());
        for (key, v) in raw {
            let deg: usize = key[..self.dim].iter().map(|&e| e as usize).sum();
            if deg == 0 {
                // constant term of the product is exactly 1
                continue;
            }
            while den_pows.len() <= deg {
                let next = den_pows.last().unwrap() * &self.scale;
                den_pows.push(next);
            }
            let v: Vec<BigInt> = v.iter().map(|c| -c).collect();
            let mut c = CycNum::from_group_ring(self.n, &v, den_pows[deg].clone());
            if c.is_zero() {
                continue;
            }
            if c.is_rational() {
                c = CycNum::from_rational(&c.to_rational().unwrap());
            }
            let alpha = key[..self.dim].iter().map(|&e| e as u32).collect();
            let beta = key[self.dim..].iter().map(|&e| e as u32).collect();
            terms.push((BiMonomial { alpha, beta }, c));
        }
        Ok(HermPoly::from_terms(self.dim, form, terms))
    }

    fn convert<T>(&self, f: impl Fn(&BigInt) -> T) -> Vec<Vec<(usize, usize, Vec<(usize, T)>)>> {
        self.forms
            .iter()
            .map(|form| {
                form.iter()
                    .map(|t| (t.z, t.w, t.coeff.iter().map(|(s, k)| (*s, f(k))).collect()))
                    .collect()
            })
            .collect()
    }
}

/// Lookup of `+-zeta_n^k` by power-basis numerators.
struct RootIndex {
    n: u32,
    map: HashMap<Vec<BigInt>, usize>,
}

impl RootIndex {
    fn new(n: u32) -> Self {
        let map = (0..n as usize)
            .map(|k| (CycNum::root_of_unity(n, k as i64).numerators().to_vec(), k))
            .collect();
        RootIndex { n, map }
    }

    fn find(&self, c: &CycNum) -> Option<(usize, i64)> {
        debug_assert_eq!(c.conductor(), self.n);
        if !c.denominator().is_one() {
            return None;
        }
        if let Some(&k) = self.map.get(c.numerators()) {
            return Some((k, 1));
        }
        let neg: Vec<BigInt> = c.numerators().iter().map(|v| -v).collect();
        self.map.get(&neg).map(|&k| (k, -1))
    }
}

trait RingElem: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self);
    fn to_bigint(&self) -> BigInt;
}

impl RingElem for i128 {
    fn ring_zero() -> Self {
        0
    }
    fn ring_one() -> Self {
        1
    }
    fn ring_is_zero(&self) -> bool {
        *self == 0
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl RingElem for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

type Key = Vec<u16>;

/// `prod_f (1 - L_f)` with group-ring coefficients; keys are `alpha ++ beta`.
fn expand<T: RingElem>(
    dim: usize,
    n: usize,
    forms: &[Vec<(usize, usize, Vec<(usize, T)>)>],
) -> BTreeMap<Key, Vec<BigInt>> {
    let mut poly: HashMap<Key, Vec<T>> = HashMap::new();
    let mut one = vec![T::ring_zero(); n];
    one[0] = T::ring_one();
    poly.insert(vec![0; 2 * dim], one);
    for form in forms {
        let mut next = poly.clone();
        for (key, v) in &poly {
            for (z, w, coeff) in form {
                let mut k = key.clone();
                k[*z] += 1;
                k[dim + *w] += 1;
                let slot = next.entry(k).or_insert_with(|| vec![T::ring_zero(); n]);
                for (s, c) in v.iter().enumerate() {
                    if c.ring_is_zero() {
                        continue;
                    }
                    for (shift, kc) in coeff {
                        slot[(s + shift) % n].sub_mul(c, kc);
                    }
                }
            }
        }
        next.retain(|_, v| v.iter().any(|c| !c.ring_is_zero()));
        poly = next;
    }
    poly.into_iter().map(|(k, v)| (k, v.iter().map(RingElem::to_bigint).collect())).collect()
}
