//! Coefficient matrices of Hermitian forms, their inertia, and the
//! decomposition `P = |F|^2 - |G|^2` into holomorphic components.
//!
//! Inertia comes from an exact congruence diagonalization `M = L D L*` over the
//! cyclotomic field. The rank is therefore exact, and each pivot is a nonzero
//! real field element whose sign is certified by interval embedding, doubling
//! the precision until the enclosure excludes zero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNum, Embedder};
use crate::groups::{make_dihedral, make_gamma_pq, make_scalar_cyclic, UnitaryGroup};
use crate::hermpoly::{fmt_monomial, BiMonomial, Form, HermPoly, HoloPoly};
use crate::interval::ComplexInterval;
use crate::invariant::phi_gamma;
use crate::json::JsonRational;
use crate::{Error, Result};

pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const MAX_PRECISION_BITS: u32 = 4096;

/// Hermitian matrix of a form, indexed by holomorphic monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    dim: usize,
    basis: Vec<Vec<u32>>,
    entries: Vec<Vec<CycNum>>,
}

impl CoeffMatrix {
    /// Entry `(i, j)` is the coefficient of `z^basis[i] conj(z)^basis[j]`.
    pub fn from_poly(p: &HermPoly) -> Result<Self> {
        if !p.is_hermitian() {
            return Err(Error::NotHermitian("coefficient map is not conjugate symmetric".into()));
        }
        let basis = p.holomorphic_support();
        let entries = basis
            .iter()
            .map(|a| basis.iter().map(|b| p.coeff(a, b)).collect())
            .collect();
        Ok(CoeffMatrix { dim: p.dim(), basis, entries })
    }

    /// Checked constructor from explicit entries.
    pub fn from_entries(dim: usize, basis: Vec<Vec<u32>>, entries: Vec<Vec<CycNum>>) -> Result<Self> {
        let k = basis.len();
        if entries.len() != k || entries.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch { expected: k, found: entries.len() });
        }
        if basis.iter().any(|b| b.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: basis.len() });
        }
        for i in 0..k {
            for j in 0..=i {
                if entries[i][j] != entries[j][i].conj() {
                    return Err(Error::NotHermitian(format!("entries ({i},{j}) and ({j},{i})")));
                }
            }
        }
        Ok(CoeffMatrix { dim, basis, entries })
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i][j]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.size()).all(|i| (0..self.size()).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    /// `S* M S` for a square `S` of the same size.
    pub fn congruent(&self, s: &[Vec<CycNum>]) -> Result<Self> {
        let k = self.size();
        if s.len() != k || s.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch { expected: k, found: s.len() });
        }
        let ms: Vec<Vec<CycNum>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (0..k).fold(CycNum::zero(1), |acc, l| acc.add(&self.entries[i][l].mul(&s[l][j]))))
                    .collect()
            })
            .collect();
        let out = (0..k)
            .map(|i| {
                (0..k).map(|j| (0..k).fold(CycNum::zero(1), |acc, l| acc.add(&s[l][i].conj().mul(&ms[l][j])))).collect()
            })
            .collect();
        Ok(CoeffMatrix { dim: self.dim, basis: self.basis.clone(), entries: out })
    }

    /// The Hermitian form `sum_ij M_ij z^b_i conj(z)^b_j`.
    pub fn to_poly(&self) -> HermPoly {
        let mut terms = Vec::new();
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                terms.push((BiMonomial { alpha: a.clone(), beta: b.clone() }, self.entries[i][j].clone()));
            }
        }
        HermPoly::from_terms(self.dim, Form::Diagonal, terms)
    }
}

pub fn coeff_matrix(p: &HermPoly) -> Result<CoeffMatrix> {
    CoeffMatrix::from_poly(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// `R = N+ / (N+ + N-)`.
    pub fn ratio(&self) -> Option<BigRational> {
        (self.rank() > 0).then(|| BigRational::new(BigInt::from(self.n_plus), BigInt::from(self.rank())))
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_minus, self.n_zero)
    }
}

/// Sign of a nonzero real field element, refining the embedding as needed.
pub fn certified_sign(d: &CycNum, precision_bits: u32) -> Result<Ordering> {
    if let Some(q) = d.to_rational() {
        return Ok(q.cmp(&BigRational::zero()));
    }
    let mut bits = precision_bits.max(crate::cyclotomic::MIN_EMBED_BITS);
    loop {
        let v = Embedder::new(bits).embed_real(d);
        if let Some(s) = v.sign() {
            if s != Ordering::Equal {
                return Ok(s);
            }
        }
        if bits >= MAX_PRECISION_BITS {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits = (bits * 2).min(MAX_PRECISION_BITS);
    }
}

struct Pivot {
    /// Component as coefficients over the basis, normalized so that the pivot
    /// contributes `d |component|^2`.
    comp: Vec<CycNum>,
    d: CycNum,
    sign: Ordering,
}

/// Exact `L D L*` with symmetric pivoting; zero-diagonal blocks are opened up
/// by a congruence that makes some diagonal entry `2 |M_ij|^2`.
fn ldl(m: &CoeffMatrix, precision_bits: u32) -> Result<Vec<Pivot>> {
    let k = m.size();
    let mut a = m.entries.clone();
    let mut active = vec![true; k];
    let mut forms: Vec<Vec<CycNum>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { CycNum::one(1) } else { CycNum::zero(1) }).collect())
        .collect();
    let mut pivots = Vec::new();
    loop {
        let live: Vec<usize> = (0..k).filter(|&i| active[i]).collect();
        let diag = live
            .iter()
            .copied()
            .filter(|&i| !a[i][i].is_zero())
            .min_by_key(|&i| (!a[i][i].is_rational(), i));
        let i = match diag {
            Some(i) => i,
            None => {
                let pair = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i < j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                let c = a[i][j].clone();
                let cb = c.conj();
                for &l in &live {
                    let t = a[i][l].add(&c.mul(&a[j][l]));
                    a[i][l] = t;
                }
                for &l in &live {
                    let t = a[l][i].add(&cb.mul(&a[l][j]));
                    a[l][i] = t;
                }
                let fi = forms[i].clone();
                for (fj, v) in forms[j].iter_mut().zip(&fi) {
                    *fj = fj.sub(&c.mul(v));
                }
                i
            }
        };
        let d = a[i][i].clone();
        debug_assert!(d.is_real());
        let dinv = d.inv()?;
        let mut comp = vec![CycNum::zero(1); k];
        for &j in &live {
            if a[j][i].is_zero() {
                continue;
            }
            let w = a[j][i].mul(&dinv);
            for (slot, v) in comp.iter_mut().zip(&forms[j]) {
                if !v.is_zero() {
                    *slot = slot.add(&w.mul(v));
                }
            }
        }
        let col: Vec<(usize, CycNum)> =
            live.iter().copied().filter(|&j| j != i && !a[j][i].is_zero()).map(|j| (j, a[j][i].mul(&dinv))).collect();
        for &(j, ref wj) in &col {
            for &l in &live {
                if l == i || a[i][l].is_zero() {
                    continue;
                }
                let t = a[j][l].sub(&wj.mul(&a[i][l]));
                a[j][l] = t;
            }
        }
        active[i] = false;
        let sign = certified_sign(&d, precision_bits)?;
        pivots.push(Pivot { comp, d, sign });
    }
    Ok(pivots)
}

/// Inertia `(N+, N-, N0)` with exact rank.
pub fn inertia(m: &CoeffMatrix, precision_bits: u32) -> Result<Inertia> {
    let piv = ldl(m, precision_bits)?;
    let n_plus = piv.iter().filter(|p| p.sign == Ordering::Greater).count();
    let n_minus = piv.iter().filter(|p| p.sign == Ordering::Less).count();
    Ok(Inertia { n_plus, n_minus, n_zero: m.size() - n_plus - n_minus })
}

/// One component `sqrt(coeff_sq) * poly` of a map into a hyperquadric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapComponent {
    pub poly: HoloPoly,
    /// Positive real field element; the component's scalar is its square root.
    pub coeff_sq: CycNum,
}

impl MapComponent {
    pub fn monomial(exp: Vec<u32>, coeff_sq: BigRational) -> Self {
        let dim = exp.len();
        MapComponent { poly: HoloPoly::monomial(dim, exp, CycNum::one(1)), coeff_sq: CycNum::from_rational(&coeff_sq) }
    }

    /// The exponent when the polynomial part is a bare monomial.
    pub fn as_monomial(&self) -> Option<&Vec<u32>> {
        if self.poly.len() != 1 {
            return None;
        }
        let (e, c) = self.poly.terms().next()?;
        c.is_one().then_some(e)
    }

    /// `coeff_sq |poly|^2`.
    pub fn norm_sqr(&self, form: Form) -> HermPoly {
        HermPoly::norm_sqr_of(&self.poly, form).scale(&self.coeff_sq)
    }

    /// Certified value at `z`.
    pub fn eval(&self, z: &[ComplexInterval], emb: &mut Embedder) -> ComplexInterval {
        let s = emb.embed_real(&self.coeff_sq).sqrt().expect("positive coefficient");
        let v = self.poly.eval(z, emb);
        ComplexInterval::new(v.re.mul(&s), v.im.mul(&s))
    }

    fn scalar_text(&self) -> String {
        if let Some(q) = self.coeff_sq.to_rational() {
            if q.is_one() {
                return String::new();
            }
            let (n, d) = (q.numer(), q.denom());
            let (rn, rd) = (n.sqrt(), d.sqrt());
            if &(&rn * &rn) == n && &(&rd * &rd) == d {
                return format!("{}", BigRational::new(rn, rd));
            }
            if q.is_integer() {
                return format!("√{q}");
            }
            return format!("√({q})");
        }
        format!("√({})", self.coeff_sq)
    }
}

impl fmt::Display for MapComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.scalar_text();
        match self.as_monomial() {
            Some(e) => {
                let m = fmt_monomial(e, "z", "");
                let m = if m.is_empty() { "1".to_string() } else { m };
                if s.is_empty() {
                    write!(f, "{m}")
                } else {
                    write!(f, "{s} {m}")
                }
            }
            None => {
                if s.is_empty() {
                    write!(f, "({})", self.poly)
                } else {
                    write!(f, "{s} ({})", self.poly)
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ComponentJson {
    Monomial { monomial: Vec<u32>, coeff_sq: JsonRational },
    General { poly: HoloPoly, coeff_sq: CycNum },
}

impl Serialize for MapComponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match (self.as_monomial(), self.coeff_sq.to_rational()) {
            (Some(e), Some(q)) => {
                ComponentJson::Monomial { monomial: e.clone(), coeff_sq: JsonRational::from_rational(&q) }.serialize(s)
            }
            _ => ComponentJson::General { poly: self.poly.clone(), coeff_sq: self.coeff_sq.clone() }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for MapComponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match ComponentJson::deserialize(d)? {
            ComponentJson::Monomial { monomial, coeff_sq } => {
                MapComponent::monomial(monomial, coeff_sq.to_rational().map_err(D::Error::custom)?)
            }
            ComponentJson::General { poly, coeff_sq } => MapComponent { poly, coeff_sq },
        })
    }
}

/// Holomorphic map `(F, G)` with `|F|^2 - |G|^2` the target form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadMap {
    pub dim: usize,
    pub plus: Vec<MapComponent>,
    pub minus: Vec<MapComponent>,
    /// Coefficients are exact field elements.
    pub exact: bool,
}

impl QuadMap {
    /// Target hyperquadric `Q(|F|, |G|)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.plus.len(), self.minus.len())
    }

    pub fn degree(&self) -> u32 {
        self.plus.iter().chain(&self.minus).map(|c| c.poly.degree()).max().unwrap_or(0)
    }

    /// `|F|^2 - |G|^2` as a diagonal Hermitian form.
    pub fn norm_difference(&self) -> HermPoly {
        let mut terms = Vec::new();
        for (comps, sign) in [(&self.plus, 1), (&self.minus, -1)] {
            for c in comps {
                let sq = if sign < 0 { c.coeff_sq.neg() } else { c.coeff_sq.clone() };
                for (e1, a) in c.poly.terms() {
                    for (e2, b) in c.poly.terms() {
                        terms.push((BiMonomial { alpha: e1.clone(), beta: e2.clone() }, sq.mul(&a.mul(&b.conj()))));
                    }
                }
            }
        }
        HermPoly::from_terms(self.dim, Form::Diagonal, terms)
    }

    /// Certified `|F(z)|^2 - |G(z)|^2`.
    pub fn eval_norm_difference(&self, z: &[ComplexInterval], emb: &mut Embedder) -> crate::Interval {
        let mut acc = crate::Interval::zero(emb.prec());
        for c in &self.plus {
            acc = acc.add(&c.eval(z, emb).norm_sqr());
        }
        for c in &self.minus {
            acc = acc.sub(&c.eval(z, emb).norm_sqr());
        }
        acc
    }

    /// Multi-line `F = (...)`, `G = (...)` rendering.
    pub fn render(&self) -> String {
        let join = |v: &[MapComponent]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        format!("F = ({})\nG = ({})", join(&self.plus), join(&self.minus))
    }
}

/// Split `P` into `|F|^2 - |G|^2` exactly and verify the reconstruction.
pub fn decompose(p: &HermPoly, precision_bits: u32) -> Result<QuadMap> {
    let p = p.diagonal();
    let m = CoeffMatrix::from_poly(&p)?;
    let pivots = ldl(&m, precision_bits)?;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for piv in pivots {
        let poly = HoloPoly::from_terms(
            m.dim,
            m.basis.iter().cloned().zip(piv.comp.into_iter()).filter(|(_, c)| !c.is_zero()),
        );
        let coeff_sq = if piv.sign == Ordering::Less { piv.d.neg() } else { piv.d };
        let comp = MapComponent { poly, coeff_sq };
        if piv.sign == Ordering::Less {
            minus.push(comp);
        } else {
            plus.push(comp);
        }
    }
    let map = QuadMap { dim: m.dim, plus, minus, exact: true };
    if map.norm_difference() != p {
        return Err(Error::VerificationFailed("|F|^2 - |G|^2 differs from the input form".into()));
    }
    Ok(map)
}

/// Parametrized group families for ratio sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `diag(zeta_p, zeta_p)`.
    GammaP1,
    /// `diag(zeta_p, zeta_p^(p-1))`.
    GammaPPm1,
    /// `diag(zeta_p, zeta_p^q)` for fixed `q` (needs `p > q`).
    GammaPQ(u32),
    /// `zeta_p I_n`.
    Scalar(usize),
    Dihedral,
}

impl Family {
    pub fn group(&self, p: u32) -> Result<UnitaryGroup> {
        match *self {
            Family::GammaP1 => make_gamma_pq(p, 1),
            Family::GammaPPm1 => make_gamma_pq(p, p.saturating_sub(1)),
            Family::GammaPQ(q) => make_gamma_pq(p, q),
            Family::Scalar(n) => make_scalar_cyclic(p, n),
            Family::Dihedral => make_dihedral(p),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParameters(format!("unknown family '{s}'"));
        match s {
            "gamma-p-1" => Ok(Family::GammaP1),
            "gamma-p-pm1" => Ok(Family::GammaPPm1),
            "dihedral" => Ok(Family::Dihedral),
            _ => {
                if let Some(q) = s.strip_prefix("gamma-pq:") {
                    q.parse().map(Family::GammaPQ).map_err(|_| bad())
                } else if let Some(n) = s.strip_prefix("scalar:") {
                    n.parse().map(Family::Scalar).map_err(|_| bad())
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::GammaP1 => write!(f, "gamma-p-1"),
            Family::GammaPPm1 => write!(f, "gamma-p-pm1"),
            Family::GammaPQ(q) => write!(f, "gamma-pq:{q}"),
            Family::Scalar(n) => write!(f, "scalar:{n}"),
            Family::Dihedral => write!(f, "dihedral"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub p: u32,
    pub order: usize,
    pub inertia: Inertia,
    pub ratio: Option<JsonRational>,
}

impl RatioRow {
    pub fn ratio_value(&self) -> Option<BigRational> {
        self.ratio.as_ref().map(|r| r.to_rational().expect("nonzero denominator"))
    }
}

/// Inertia of `Phi` for the family member at `p`.
pub fn family_inertia(family: Family, p: u32, precision_bits: u32) -> Result<RatioRow> {
    let g = family.group(p)?;
    let phi = phi_gamma(&g)?;
    let m = CoeffMatrix::from_poly(&phi.diagonal())?;
    let inertia = inertia(&m, precision_bits)?;
    Ok(RatioRow { p, order: g.order(), inertia, ratio: inertia.ratio().map(|r| JsonRational::from_rational(&r)) })
}

/// Per-`p` inertia and `R_p` table, computed in parallel and returned in `p` order.
pub fn signature_ratio(family: Family, ps: impl IntoIterator<Item = u32>, precision_bits: u32) -> Result<Vec<RatioRow>> {
    let ps: Vec<u32> = ps.into_iter().collect();
    ps.par_iter().map(|&p| family_inertia(family, p, precision_bits)).collect()
}
