use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{fmt_coeff, fmt_monomial};
use crate::cyclotomic::{CycNum, Embedder};
use crate::groups::UnitaryMatrix;
use crate::interval::ComplexInterval;
use crate::{Error, Result};

/// Holomorphic polynomial in `z_1..z_n` with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloPoly {
    dim: usize,
    terms: BTreeMap<Vec<u32>, CycNum>,
}

impl HoloPoly {
    pub fn zero(dim: usize) -> Self {
        HoloPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: CycNum) -> Self {
        Self::monomial(dim, vec![0; dim], c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, CycNum::one(1))
    }

    pub fn monomial(dim: usize, exp: Vec<u32>, c: CycNum) -> Self {
        assert_eq!(exp.len(), dim);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        HoloPoly { dim, terms }
    }

    pub fn var(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        Self::monomial(dim, e, CycNum::one(1))
    }

    /// `sum_k coeffs[k] z_k`.
    pub fn linear(coeffs: &[CycNum]) -> Self {
        let dim = coeffs.len();
        let mut out = Self::zero(dim);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; dim];
            e[k] = 1;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, CycNum)>) -> Self {
        let mut out = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim);
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Option<&CycNum> {
        self.terms.get(exp)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&CycNum::from_int(-1)))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul(c));
        }
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&CycNum::from_rational(q))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut acc: BTreeMap<Vec<u32>, CycNum> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let p = c1.mul(c2);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add(&p),
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(HoloPoly { dim: self.dim, terms: acc })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..e {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// `p(g z)`: substitute `z_j -> sum_k g_jk z_k`.
    pub fn substitute(&self, g: &UnitaryMatrix) -> Result<Self> {
        if g.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: g.dim() });
        }
        let forms: Vec<HoloPoly> = (0..self.dim).map(|j| HoloPoly::linear(g.row(j))).collect();
        let mut cache: Vec<Vec<HoloPoly>> = forms.iter().map(|f| vec![HoloPoly::one(self.dim), f.clone()]).collect();
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let mut prod = HoloPoly::constant(self.dim, c.clone());
            for (j, &k) in e.iter().enumerate() {
                while cache[j].len() <= k as usize {
                    let next = cache[j].last().unwrap().mul(&forms[j])?;
                    cache[j].push(next);
                }
                if k > 0 {
                    prod = prod.mul(&cache[j][k as usize])?;
                }
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// Divide by the first nonzero coefficient in term order.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("stored coefficients are nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, z: &[ComplexInterval], emb: &mut Embedder) -> ComplexInterval {
        let prec = emb.prec();
        let mut acc = ComplexInterval::zero(prec);
        for (e, c) in &self.terms {
            let mut t = emb.embed(c);
            for (zj, &k) in z.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&zj.with_prec(prec).pow(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl fmt::Display for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| super::graded_cmp(a.0, b.0));
        for (i, (e, c)) in ordered.into_iter().enumerate() {
            let mono = fmt_monomial(e, "z", "");
            fmt_coeff(f, c, &mono, i == 0)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct HoloTermJson {
    exp: Vec<u32>,
    coeff: CycNum,
}

#[derive(Serialize, Deserialize)]
struct HoloJson {
    dim: usize,
    terms: Vec<HoloTermJson>,
}

impl Serialize for HoloPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HoloJson {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| HoloTermJson { exp: e.clone(), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HoloPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = HoloJson::deserialize(d)?;
        if raw.terms.iter().any(|t| t.exp.len() != raw.dim) {
            return Err(D::Error::custom("exponent length differs from dim"));
        }
        Ok(HoloPoly::from_terms(raw.dim, raw.terms.into_iter().map(|t| (t.exp, t.coeff))))
    }
}
