//! Sparse exact polynomials in `(z, conj(w))`, their holomorphic and
//! moment-variable relatives, and reduction modulo sphere/hyperquadric equations.

mod holo;
mod moment;

pub use holo::HoloPoly;
pub use moment::MomentPoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNum, Embedder};
use crate::groups::UnitaryMatrix;
use crate::interval::ComplexInterval;
use crate::{Error, Result};

/// `z^alpha conj(w)^beta`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BiMonomial {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl BiMonomial {
    pub fn constant(dim: usize) -> Self {
        BiMonomial { alpha: vec![0; dim], beta: vec![0; dim] }
    }

    pub fn transpose(&self) -> Self {
        BiMonomial { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    pub fn degree_z(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn degree_w(&self) -> u32 {
        self.beta.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        BiMonomial {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a + b).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Whether the second set of variables is an independent `w` or is tied to `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// Polynomial in `z` and `conj(w)`.
    #[default]
    Polarized,
    /// Restriction to `w = z`.
    Diagonal,
}

/// Which argument a matrix acts on in [`HermPoly::substitute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Z,
    W,
}

#[derive(Clone, Debug)]
pub struct HermPoly {
    dim: usize,
    form: Form,
    terms: BTreeMap<BiMonomial, CycNum>,
    hermitian: bool,
}

impl PartialEq for HermPoly {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.form == other.form && self.terms == other.terms
    }
}

impl Eq for HermPoly {}

fn add_into(map: &mut BTreeMap<BiMonomial, CycNum>, m: BiMonomial, c: CycNum) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
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

impl HermPoly {
    fn build(dim: usize, form: Form, terms: BTreeMap<BiMonomial, CycNum>) -> Self {
        let mut p = HermPoly { dim, form, terms, hermitian: false };
        p.hermitian = p.compute_hermitian();
        p
    }

    pub fn zero(dim: usize, form: Form) -> Self {
        Self::build(dim, form, BTreeMap::new())
    }

    pub fn constant(dim: usize, form: Form, c: CycNum) -> Self {
        Self::from_terms(dim, form, [(BiMonomial::constant(dim), c)])
    }

    pub fn one(dim: usize, form: Form) -> Self {
        Self::constant(dim, form, CycNum::one(1))
    }

    pub fn from_terms(
        dim: usize,
        form: Form,
        terms: impl IntoIterator<Item = (BiMonomial, CycNum)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert!(m.alpha.len() == dim && m.beta.len() == dim, "monomial length differs from dim");
            add_into(&mut map, m, c);
        }
        Self::build(dim, form, map)
    }

    pub fn monomial(dim: usize, form: Form, alpha: Vec<u32>, beta: Vec<u32>, c: CycNum) -> Self {
        Self::from_terms(dim, form, [(BiMonomial { alpha, beta }, c)])
    }

    /// `<z, w> = sum_j z_j conj(w_j)`.
    pub fn inner_product(dim: usize) -> Self {
        Self::weighted_norm(dim, Form::Polarized, &vec![1; dim])
    }

    /// `sum_j signs[j] z_j conj(w_j)`.
    pub fn weighted_norm(dim: usize, form: Form, signs: &[i64]) -> Self {
        assert_eq!(signs.len(), dim);
        Self::from_terms(
            dim,
            form,
            signs.iter().enumerate().map(|(j, &s)| {
                let mut e = vec![0; dim];
                e[j] = 1;
                (BiMonomial { alpha: e.clone(), beta: e }, CycNum::from_int(s))
            }),
        )
    }

    /// `h(z) conj(h(w))`.
    pub fn norm_sqr_of(h: &HoloPoly, form: Form) -> Self {
        let mut map = BTreeMap::new();
        for (a, ca) in h.terms() {
            for (b, cb) in h.terms() {
                add_into(&mut map, BiMonomial { alpha: a.clone(), beta: b.clone() }, ca.mul(&cb.conj()));
            }
        }
        Self::build(h.dim(), form, map)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BiMonomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[u32], beta: &[u32]) -> CycNum {
        self.terms
            .get(&BiMonomial { alpha: alpha.to_vec(), beta: beta.to_vec() })
            .cloned()
            .unwrap_or_else(|| CycNum::zero(1))
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

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn check_hermitian(&self) -> Result<()> {
        if self.hermitian {
            Ok(())
        } else {
            Err(Error::NotHermitian("coefficient map is not conjugate symmetric".into()))
        }
    }

    fn compute_hermitian(&self) -> bool {
        self.terms.iter().all(|(m, c)| match self.terms.get(&m.transpose()) {
            Some(d) => *c == d.conj(),
            None => false,
        })
    }

    pub fn degree_z(&self) -> u32 {
        self.terms.keys().map(BiMonomial::degree_z).max().unwrap_or(0)
    }

    pub fn degree_w(&self) -> u32 {
        self.terms.keys().map(BiMonomial::degree_w).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> CycNum {
        self.terms.get(&BiMonomial::constant(self.dim)).cloned().unwrap_or_else(|| CycNum::zero(1))
    }

    /// True when every term has `alpha = beta`.
    pub fn has_diagonal_support(&self) -> bool {
        self.terms.keys().all(|m| m.alpha == m.beta)
    }

    /// Distinct holomorphic exponents occurring on either side, in graded order.
    pub fn holomorphic_support(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = self
            .terms
            .keys()
            .flat_map(|m| [m.alpha.clone(), m.beta.clone()])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        v.sort_by(|a, b| graded_cmp(a, b));
        v
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.form != other.form {
            return Err(Error::BadParameters("cannot combine polarized and diagonal forms".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut map = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut map, m.clone(), c.clone());
        }
        Ok(Self::build(self.dim, self.form, map))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let map = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Self::build(self.dim, self.form, map)
    }

    pub fn scale(&self, k: &CycNum) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in &self.terms {
            add_into(&mut map, m.clone(), c.mul(k));
        }
        Self::build(self.dim, self.form, map)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&CycNum::from_rational(q))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut map = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                add_into(&mut map, m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(Self::build(self.dim, self.form, map))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim, self.form);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("compatible");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("compatible");
            }
        }
        acc
    }

    /// Substitute `z -> g z` (side `Z`) or `w -> g w` (side `W`) and re-expand.
    pub fn substitute(&self, g: &UnitaryMatrix, side: Side) -> Result<Self> {
        if g.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: g.dim() });
        }
        // conj(w) transforms by the entrywise conjugate of g
        let g = match side {
            Side::Z => g.clone(),
            Side::W => g.conj_entries(),
        };
        let pick = |m: &BiMonomial| -> Vec<u32> {
            match side {
                Side::Z => m.alpha.clone(),
                Side::W => m.beta.clone(),
            }
        };
        let join = |m: &BiMonomial, e: &[u32]| -> BiMonomial {
            match side {
                Side::Z => BiMonomial { alpha: e.to_vec(), beta: m.beta.clone() },
                Side::W => BiMonomial { alpha: m.alpha.clone(), beta: e.to_vec() },
            }
        };
        let mut map = BTreeMap::new();
        if let Some(pattern) = g.monomial_pattern() {
            for (m, c) in &self.terms {
                let e = pick(m);
                let mut img = vec![0u32; self.dim];
                let mut coeff = c.clone();
                for (j, &k) in e.iter().enumerate() {
                    if k > 0 {
                        let (col, ref gc) = pattern[j];
                        img[col] += k;
                        coeff = coeff.mul(&gc.pow(k as i64)?);
                    }
                }
                add_into(&mut map, join(m, &img), coeff);
            }
            return Ok(Self::build(self.dim, self.form, map));
        }
        let forms: Vec<HoloPoly> = (0..self.dim).map(|j| HoloPoly::linear(g.row(j))).collect();
        let mut powers: Vec<Vec<HoloPoly>> =
            forms.iter().map(|f| vec![HoloPoly::one(self.dim), f.clone()]).collect();
        let mut images: BTreeMap<Vec<u32>, HoloPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = pick(m);
            if !images.contains_key(&e) {
                let mut prod = HoloPoly::one(self.dim);
                for (j, &k) in e.iter().enumerate() {
                    while powers[j].len() <= k as usize {
                        let next = powers[j].last().unwrap().mul(&forms[j])?;
                        powers[j].push(next);
                    }
                    if k > 0 {
                        prod = prod.mul(&powers[j][k as usize])?;
                    }
                }
                images.insert(e.clone(), prod);
            }
            for (img, ic) in images[&e].terms() {
                add_into(&mut map, join(m, img), c.mul(ic));
            }
        }
        Ok(Self::build(self.dim, self.form, map))
    }

    /// Apply `g` to both arguments: `P(g z, conj(g w))`.
    pub fn transform(&self, g: &UnitaryMatrix) -> Result<Self> {
        self.substitute(g, Side::Z)?.substitute(g, Side::W)
    }

    /// Restriction to `w = z`. Terms keep their bidegrees, so nothing merges.
    pub fn diagonal(&self) -> Self {
        HermPoly { form: Form::Diagonal, ..self.clone() }
    }

    pub fn polarized(&self) -> Self {
        HermPoly { form: Form::Polarized, ..self.clone() }
    }

    /// The polynomial in `x_j = |z_j|^2` represented by a diagonal-supported form.
    pub fn to_moment(&self) -> Result<MomentPoly> {
        let mut out = MomentPoly::zero(self.dim);
        for (m, c) in &self.terms {
            if m.alpha != m.beta {
                return Err(Error::NotDiagonalSupport(format!(
                    "term with alpha {:?} and beta {:?}",
                    m.alpha, m.beta
                )));
            }
            let q = c.to_rational().ok_or_else(|| {
                Error::NonRationalCoefficient(format!("coefficient {c} at {:?}", m.alpha))
            })?;
            out.add_term(m.alpha.clone(), q);
        }
        Ok(out)
    }

    /// Normal form modulo `sum_j |z_j|^2 - 1`.
    pub fn reduce_sphere(&self) -> Self {
        self.reduce_quadric(&vec![1; self.dim]).expect("sphere signs are valid")
    }

    /// Normal form modulo `sum_j signs[j] |z_j|^2 - 1`, dividing by the
    /// leading term `z_1 conj(z_1)` under graded lex order on
    /// `z_1, conj(z_1), z_2, ...`. Requires `signs[0] = +-1`.
    pub fn reduce_quadric(&self, signs: &[i64]) -> Result<Self> {
        if signs.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: signs.len() });
        }
        if self.dim == 0 {
            return Ok(self.clone());
        }
        let s0 = signs[0];
        if s0 != 1 && s0 != -1 {
            return Err(Error::BadParameters("leading quadric sign must be +1 or -1".into()));
        }
        // z1 conj(z1) = s0 (1 - sum_{j>1} s_j z_j conj(z_j))
        let mut rest = vec![0i64; self.dim];
        for j in 1..self.dim {
            rest[j] = -s0 * signs[j];
        }
        let mut r = HermPoly::weighted_norm(self.dim, self.form, &rest);
        r = r.add(&HermPoly::constant(self.dim, self.form, CycNum::from_int(s0))).unwrap();
        let mut powers = vec![HermPoly::one(self.dim, self.form), r.clone()];
        let mut map = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.alpha[0].min(m.beta[0]);
            if k == 0 {
                add_into(&mut map, m.clone(), c.clone());
                continue;
            }
            while powers.len() <= k as usize {
                let next = powers.last().unwrap().mul(&r).unwrap();
                powers.push(next);
            }
            let mut base = m.clone();
            base.alpha[0] -= k;
            base.beta[0] -= k;
            for (rm, rc) in powers[k as usize].terms() {
                add_into(&mut map, base.mul(rm), c.mul(rc));
            }
        }
        Ok(Self::build(self.dim, self.form, map))
    }

    /// Certified value of `P(z, conj(w))`.
    pub fn eval(&self, z: &[ComplexInterval], w: &[ComplexInterval], emb: &mut Embedder) -> ComplexInterval {
        assert!(z.len() == self.dim && w.len() == self.dim);
        let prec = emb.prec();
        let wc: Vec<ComplexInterval> = w.iter().map(|v| v.conj().with_prec(prec)).collect();
        let zc: Vec<ComplexInterval> = z.iter().map(|v| v.with_prec(prec)).collect();
        let mut acc = ComplexInterval::zero(prec);
        for (m, c) in &self.terms {
            let mut t = emb.embed(c);
            for j in 0..self.dim {
                if m.alpha[j] > 0 {
                    t = t.mul(&zc[j].pow(m.alpha[j]));
                }
                if m.beta[j] > 0 {
                    t = t.mul(&wc[j].pow(m.beta[j]));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Terms ordered for display and serialization.
    pub fn ordered_terms(&self) -> Vec<(&BiMonomial, &CycNum)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da = a.0.degree_z() + a.0.degree_w();
            let db = b.0.degree_z() + b.0.degree_w();
            da.cmp(&db)
                .then_with(|| graded_cmp(&a.0.alpha, &b.0.alpha))
                .then_with(|| graded_cmp(&a.0.beta, &b.0.beta))
        });
        v
    }
}

/// Ascending total degree, then larger leading exponents first.
pub fn graded_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

pub(crate) fn superscript(k: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// `z1²z2`-style rendering of an exponent vector.
pub(crate) fn fmt_monomial(e: &[u32], prefix: &str, suffix: &str) -> String {
    let mut s = String::new();
    for (j, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        s.push_str(&format!("{prefix}{}{suffix}", j + 1));
        if k > 1 {
            s.push_str(&superscript(k));
        }
    }
    s
}

/// Writes one signed term `c·mono`, with a leading separator unless `first`.
pub(crate) fn fmt_coeff(f: &mut fmt::Formatter<'_>, c: &CycNum, mono: &str, first: bool) -> fmt::Result {
    let (neg, body) = match c.to_rational() {
        Some(q) => {
            let a = q.abs();
            let body = if mono.is_empty() {
                a.to_string()
            } else if a.is_one() {
                String::new()
            } else {
                a.to_string()
            };
            (q.is_negative(), body)
        }
        None => (false, format!("({c})")),
    };
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    write!(f, "{body}{mono}")
}

impl fmt::Display for HermPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let bar = match self.form {
            Form::Polarized => "w̄",
            Form::Diagonal => "z̄",
        };
        for (i, (m, c)) in self.ordered_terms().into_iter().enumerate() {
            let mono = format!("{}{}", fmt_monomial(&m.alpha, "z", ""), fmt_monomial(&m.beta, bar, ""));
            fmt_coeff(f, c, &mono, i == 0)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct HermTermJson {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    coeff: CycNum,
}

#[derive(Serialize, Deserialize)]
struct HermJson {
    dim: usize,
    #[serde(default)]
    form: Form,
    terms: Vec<HermTermJson>,
}

impl Serialize for HermPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HermJson {
            dim: self.dim,
            form: self.form,
            terms: self
                .ordered_terms()
                .into_iter()
                .map(|(m, c)| HermTermJson { alpha: m.alpha.clone(), beta: m.beta.clone(), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = HermJson::deserialize(d)?;
        if raw.terms.iter().any(|t| t.alpha.len() != raw.dim || t.beta.len() != raw.dim) {
            return Err(D::Error::custom("exponent length differs from dim"));
        }
        Ok(HermPoly::from_terms(
            raw.dim,
            raw.form,
            raw.terms.into_iter().map(|t| (BiMonomial { alpha: t.alpha, beta: t.beta }, t.coeff)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn x(dim: usize, j: usize) -> HermPoly {
        let mut e = vec![0; dim];
        e[j] = 1;
        HermPoly::monomial(dim, Form::Diagonal, e.clone(), e, CycNum::one(1))
    }

    #[test]
    fn binomial_square() {
        let one = HermPoly::one(1, Form::Polarized);
        let f = one.sub(&HermPoly::inner_product(1)).unwrap();
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.coeff(&[1], &[1]), CycNum::from_int(-2));
        assert_eq!(sq.coeff(&[2], &[2]), CycNum::from_int(1));
        assert_eq!(sq.len(), 3);
        assert!(sq.is_hermitian());
    }

    #[test]
    fn sphere_reduction() {
        let s = HermPoly::inner_product(3).diagonal();
        let p = s.sub(&HermPoly::one(3, Form::Diagonal)).unwrap();
        assert!(p.reduce_sphere().is_zero());
        let q = s.pow(4).sub(&HermPoly::one(3, Form::Diagonal)).unwrap();
        assert!(q.reduce_sphere().is_zero());
        let z1 = x(2, 0);
        assert_eq!(z1.reduce_sphere(), HermPoly::one(2, Form::Diagonal).sub(&x(2, 1)).unwrap());
        let z2 = x(2, 1);
        assert_eq!(z2.reduce_sphere(), z2);
    }

    #[test]
    fn quadric_reduction() {
        // |z1|^2 - |z2|^2 = 1
        let q = x(2, 0).sub(&x(2, 1)).unwrap();
        let r = q.pow(3).reduce_quadric(&[1, -1]).unwrap();
        assert_eq!(r, HermPoly::one(2, Form::Diagonal));
        let r = x(2, 1).sub(&x(2, 0)).unwrap().reduce_quadric(&[-1, 1]).unwrap();
        assert_eq!(r, HermPoly::one(2, Form::Diagonal));
    }

    #[test]
    fn substitution_linear_action() {
        let p = HermPoly::monomial(2, Form::Polarized, vec![1, 0], vec![1, 0], CycNum::one(1));
        let g = UnitaryMatrix::scalar(2, CycNum::root_of_unity(6, 1));
        let q = p.substitute(&g, Side::Z).unwrap();
        assert_eq!(q.coeff(&[1, 0], &[1, 0]), CycNum::root_of_unity(6, 1));
        let r = p.substitute(&g, Side::W).unwrap();
        assert_eq!(r.coeff(&[1, 0], &[1, 0]), CycNum::root_of_unity(6, 5));
        assert!(p.transform(&g).unwrap() == p);
    }

    #[test]
    fn dense_substitution_matches_definition() {
        let h = UnitaryMatrix::fourier(3).unwrap();
        let p = HermPoly::inner_product(3).pow(2);
        assert_eq!(p.transform(&h).unwrap(), p);
        let q = HermPoly::monomial(3, Form::Polarized, vec![2, 0, 0], vec![0, 0, 0], CycNum::one(1));
        let s = q.substitute(&h, Side::Z).unwrap();
        assert_eq!(s.degree_z(), 2);
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn to_moment_checks_support() {
        let p = HermPoly::inner_product(2).diagonal().pow(2);
        let m = p.to_moment().unwrap();
        assert_eq!(m.coeff(&[1, 1]), BigRational::from_integer(BigInt::from(2)));
        let bad = HermPoly::monomial(2, Form::Diagonal, vec![1, 0], vec![0, 1], CycNum::one(1));
        assert!(matches!(bad.to_moment(), Err(Error::NotDiagonalSupport(_))));
        let nr = HermPoly::monomial(2, Form::Diagonal, vec![1, 0], vec![1, 0], CycNum::root_of_unity(4, 1));
        assert!(matches!(nr.to_moment(), Err(Error::NonRationalCoefficient(_))));
        assert!(!nr.is_hermitian());
    }

    #[test]
    fn json_round_trip_and_display() {
        let p = HermPoly::from_terms(
            2,
            Form::Diagonal,
            [
                (BiMonomial { alpha: vec![0, 1], beta: vec![1, 0] }, CycNum::root_of_unity(3, 1)),
                (BiMonomial { alpha: vec![1, 0], beta: vec![0, 1] }, CycNum::root_of_unity(3, 2)),
                (BiMonomial { alpha: vec![1, 0], beta: vec![1, 0] }, CycNum::from_int(-2)),
            ],
        );
        assert!(p.is_hermitian());
        let s = serde_json::to_string(&p).unwrap();
        let back: HermPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.to_string(), "-2z1z̄1 + (-1 - ζ3)z1z̄2 + (ζ3)z2z̄1");
    }

    #[test]
    fn eval_on_sphere() {
        let mut emb = Embedder::new(128);
        let p = HermPoly::inner_product(2).pow(3);
        let half = BigRational::new(1.into(), 2.into());
        let z = vec![
            ComplexInterval::from_rationals(&half, &half, 128),
            ComplexInterval::from_rationals(&half, &-half.clone(), 128),
        ];
        let v = p.eval(&z, &z, &mut emb);
        assert!(v.contains(&BigRational::one(), &BigRational::zero()));
    }
}
