use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{graded_cmp, superscript, BiMonomial, Form, HermPoly};
use crate::cyclotomic::CycNum;
use crate::json::JsonRational;
use crate::{Error, Result};

/// Real polynomial with rational coefficients in `x_j = |z_j|^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentPoly {
    dim: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MomentPoly {
    pub fn zero(dim: usize) -> Self {
        MomentPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: BigRational) -> Self {
        Self::monomial(dim, vec![0; dim], c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, BigRational::one())
    }

    pub fn monomial(dim: usize, exp: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exp.len(), dim);
        let mut out = Self::zero(dim);
        out.add_term(exp, c);
        out
    }

    pub fn var(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        Self::monomial(dim, e, BigRational::one())
    }

    /// Sum of the variables `x_j` for `j` in `range`.
    pub fn var_sum(dim: usize, range: std::ops::Range<usize>) -> Self {
        let mut out = Self::zero(dim);
        for j in range {
            let mut e = vec![0; dim];
            e[j] = 1;
            out.add_term(e, BigRational::one());
        }
        out
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut out = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim);
            out.add_term(e, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in ascending graded order (total degree, then larger leading exponents first).
    pub fn graded_terms(&self) -> Vec<(&Vec<u32>, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_cmp(a.0, b.0));
        v
    }

    pub fn coeff(&self, exp: &[u32]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
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

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn positive_count(&self) -> usize {
        self.terms.values().filter(|c| c.is_positive()).count()
    }

    pub fn negative_count(&self) -> usize {
        self.terms.values().filter(|c| c.is_negative()).count()
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
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * q);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        acc
    }

    /// Substitute `x_j -> images[j]`; every image lives in `new_dim` variables.
    pub fn compose(&self, images: &[MomentPoly], new_dim: usize) -> Result<Self> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: images.len() });
        }
        if let Some(bad) = images.iter().find(|p| p.dim != new_dim) {
            return Err(Error::DimensionMismatch { expected: new_dim, found: bad.dim });
        }
        let mut powers: Vec<Vec<MomentPoly>> =
            images.iter().map(|p| vec![MomentPoly::one(new_dim), p.clone()]).collect();
        let mut out = MomentPoly::zero(new_dim);
        for (e, c) in &self.terms {
            let mut term = MomentPoly::constant(new_dim, c.clone());
            for (j, &k) in e.iter().enumerate() {
                while powers[j].len() <= k as usize {
                    let next = powers[j].last().unwrap().mul(&images[j])?;
                    powers[j].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[j][k as usize])?;
                }
            }
            for (e, c) in term.terms {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// Normal form modulo the affine relation `sum_j a_j x_j + c = 0`,
    /// eliminating `x_k` (requires `a_k != 0`).
    pub fn reduce_affine(&self, a: &[BigRational], c: &BigRational, k: usize) -> Result<Self> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.len() });
        }
        if a[k].is_zero() {
            return Err(Error::BadParameters("eliminated variable has zero coefficient".into()));
        }
        let inv = -a[k].recip();
        let images: Vec<MomentPoly> = (0..self.dim)
            .map(|j| {
                if j != k {
                    return MomentPoly::var(self.dim, j);
                }
                let mut img = MomentPoly::constant(self.dim, c * &inv);
                for (i, ai) in a.iter().enumerate() {
                    if i != k {
                        img = img.add(&MomentPoly::var(self.dim, i).scale(&(ai * &inv))).unwrap();
                    }
                }
                img
            })
            .collect();
        self.compose(&images, self.dim)
    }

    pub fn has_odd_power(&self, j: usize) -> bool {
        self.terms.keys().any(|e| e[j] % 2 == 1)
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.dim);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of all coefficients (value at the all-ones point).
    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Diagonal Hermitian form obtained by `x_j -> z_j conj(z_j)`.
    pub fn to_herm(&self) -> HermPoly {
        HermPoly::from_terms(
            self.dim,
            Form::Diagonal,
            self.terms.iter().map(|(e, c)| {
                (BiMonomial { alpha: e.clone(), beta: e.clone() }, CycNum::from_rational(c))
            }),
        )
    }

    /// Substitute `x_j -> images[j]`, where the images are Hermitian forms.
    pub fn substitute_herm(&self, images: &[HermPoly]) -> Result<HermPoly> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: images.len() });
        }
        let Some(first) = images.first() else {
            return Err(Error::BadParameters("no variables to substitute".into()));
        };
        let (dim, form) = (first.dim(), first.form());
        let mut powers: Vec<Vec<HermPoly>> =
            images.iter().map(|p| vec![HermPoly::one(dim, form), p.clone()]).collect();
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            let mut term = HermPoly::constant(dim, form, CycNum::from_rational(c));
            for (j, &k) in e.iter().enumerate() {
                while powers[j].len() <= k as usize {
                    let next = powers[j].last().unwrap().mul(&images[j])?;
                    powers[j].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[j][k as usize])?;
                }
            }
            out.extend(term.terms().map(|(m, c)| (m.clone(), c.clone())));
        }
        Ok(HermPoly::from_terms(dim, form, out))
    }

    /// Render with caller-supplied variable names.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.dim);
        if self.terms.is_empty() {
            return "0".into();
        }
        // pure powers first (highest degree first), then mixed terms by ascending degree
        let (mut ordered, mixed): (Vec<_>, Vec<_>) = self
            .graded_terms()
            .into_iter()
            .partition(|(e, _)| e.iter().filter(|k| **k > 0).count() == 1);
        ordered.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.0.iter().sum(), b.0.iter().sum());
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        ordered.extend(mixed);
        let mut s = String::new();
        for (i, (e, c)) in ordered.into_iter().enumerate() {
            let mono: String = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}{}", superscript(*k)) })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}{mono}"));
            }
        }
        s
    }

    pub fn default_names(dim: usize) -> Vec<String> {
        match dim {
            1 => vec!["x".into()],
            2 => vec!["x".into(), "y".into()],
            _ => (1..=dim).map(|j| format!("x{j}")).collect(),
        }
    }

    /// Integer coefficients, when all are integral.
    pub fn integer_coeffs(&self) -> Option<BTreeMap<Vec<u32>, BigInt>> {
        self.terms
            .iter()
            .map(|(e, c)| c.is_integer().then(|| (e.clone(), c.to_integer())))
            .collect()
    }
}

impl fmt::Display for MomentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Self::default_names(self.dim)))
    }
}

#[derive(Serialize, Deserialize)]
struct MomentTermJson {
    exp: Vec<u32>,
    coeff: JsonRational,
}

#[derive(Serialize, Deserialize)]
struct MomentJson {
    dim: usize,
    terms: Vec<MomentTermJson>,
}

impl Serialize for MomentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MomentJson {
            dim: self.dim,
            terms: self
                .graded_terms()
                .into_iter()
                .map(|(e, c)| MomentTermJson { exp: e.clone(), coeff: JsonRational::from_rational(c) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MomentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MomentJson::deserialize(d)?;
        let mut out = MomentPoly::zero(raw.dim);
        for t in raw.terms {
            if t.exp.len() != raw.dim {
                return Err(D::Error::custom("exponent length differs from dim"));
            }
            out.add_term(t.exp, t.coeff.to_rational().map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn binomial_reduces_on_line() {
        // (x + y)^5 = 1 on x + y = 1
        let s = MomentPoly::var_sum(2, 0..2).pow(5);
        let red = s.reduce_affine(&[r(1), r(1)], &r(-1), 0).unwrap();
        assert_eq!(red, MomentPoly::one(2));
    }

    #[test]
    fn compose_sign_flip() {
        let p = MomentPoly::from_terms(2, [(vec![2, 0], r(1)), (vec![1, 1], r(3))]);
        let q = p
            .compose(&[MomentPoly::var(2, 0).scale(&r(-1)), MomentPoly::var(2, 1)], 2)
            .unwrap();
        assert_eq!(q.coeff(&[2, 0]), r(1));
        assert_eq!(q.coeff(&[1, 1]), r(-3));
        assert!(p.has_odd_power(0));
    }

    #[test]
    fn display_and_json() {
        let p = MomentPoly::from_terms(
            2,
            [(vec![4, 0], r(1)), (vec![0, 4], r(1)), (vec![1, 1], r(4)), (vec![2, 2], r(-2))],
        );
        assert_eq!(p.to_string(), "x⁴ + y⁴ + 4xy - 2x²y²");
        let s = serde_json::to_string(&p).unwrap();
        let back: MomentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(s.contains(r#"{"exp":[1,1],"coeff":[4,1]}"#));
    }
}
