//! Finite subgroups of `U(n)` given by explicit matrices over cyclotomic fields.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{lcm, CycNum};
use crate::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 10_000;

/// Square matrix over cyclotomic numbers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<CycNum>,
}

impl UnitaryMatrix {
    /// Checked constructor: rows must form a square unitary matrix.
    pub fn new(rows: Vec<Vec<CycNum>>) -> Result<Self> {
        let m = Self::from_rows_unchecked(rows)?;
        if !m.is_unitary() {
            return Err(Error::NotUnitary(format!("matrix {m} fails A A* = I")));
        }
        Ok(m)
    }

    /// Square matrix without the unitarity check.
    pub fn from_rows_unchecked(rows: Vec<Vec<CycNum>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::BadParameters("matrix must be at least 1x1".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
        }
        Ok(UnitaryMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, CycNum::one(1))
    }

    pub fn scalar(dim: usize, c: CycNum) -> Self {
        Self::diagonal(vec![c; dim])
    }

    pub fn diagonal(d: Vec<CycNum>) -> Self {
        let dim = d.len();
        let mut entries = vec![CycNum::zero(1); dim * dim];
        for (i, c) in d.into_iter().enumerate() {
            entries[i * dim + i] = c;
        }
        UnitaryMatrix { dim, entries }
    }

    /// `[[0, 1], [1, 0]]`.
    pub fn swap() -> Self {
        let (o, z) = (CycNum::one(1), CycNum::zero(1));
        UnitaryMatrix { dim: 2, entries: vec![z.clone(), o.clone(), o, z] }
    }

    /// Discrete Fourier matrix `(zeta_n^(jk)) / g` for odd `n`, where `g` is the
    /// quadratic Gauss sum (`|g|^2 = n`).
    pub fn fourier(n: usize) -> Result<Self> {
        if n % 2 == 0 || n == 0 {
            return Err(Error::BadParameters(format!("Fourier matrix needs odd size, got {n}")));
        }
        let nn = n as u32;
        let mut g = CycNum::zero(nn);
        for k in 0..n as i64 {
            g = g.add(&CycNum::root_of_unity(nn, k * k));
        }
        let ginv = g.inv()?;
        let rows = (0..n as i64)
            .map(|j| (0..n as i64).map(|k| CycNum::root_of_unity(nn, j * k).mul(&ginv)).collect())
            .collect();
        Self::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, j: usize) -> &[CycNum] {
        &self.entries[j * self.dim..(j + 1) * self.dim]
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: Option<CycNum> = None;
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    acc = Some(match acc {
                        None => t,
                        Some(s) => s.add(&t),
                    });
                }
                entries.push(acc.unwrap_or_else(|| CycNum::zero(1)));
            }
        }
        Ok(UnitaryMatrix { dim: n, entries })
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).conj());
            }
        }
        UnitaryMatrix { dim: n, entries }
    }

    /// Entrywise complex conjugate.
    pub fn conj_entries(&self) -> Self {
        UnitaryMatrix { dim: self.dim, entries: self.entries.iter().map(CycNum::conj).collect() }
    }

    /// Inverse of a unitary matrix.
    pub fn inverse(&self) -> Self {
        self.conj_transpose()
    }

    /// `A^e`; negative powers use the conjugate transpose.
    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.dim);
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

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.conj_transpose()).map(|p| p.is_identity()).unwrap_or(false)
    }

    /// When every row has exactly one nonzero entry, `(column, entry)` per row.
    pub fn monomial_pattern(&self) -> Option<Vec<(usize, CycNum)>> {
        (0..self.dim)
            .map(|i| {
                let mut nz = self.row(i).iter().enumerate().filter(|(_, c)| !c.is_zero());
                let first = nz.next()?;
                if nz.next().is_some() {
                    return None;
                }
                Some((first.0, first.1.clone()))
            })
            .collect()
    }

    /// Least common multiple of the entry conductors.
    pub fn conductor(&self) -> u32 {
        self.entries.iter().fold(1, |acc, c| lcm(acc, c.conductor()))
    }

    fn lifted(&self, n: u32) -> Self {
        UnitaryMatrix { dim: self.dim, entries: self.entries.iter().map(|c| c.lift(n)).collect() }
    }

    /// Canonical key for matrices whose entries all sit at conductor `n`.
    fn key(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for c in &self.entries {
            c.push_key(&mut out);
        }
        out
    }
}

impl fmt::Display for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str("]")
    }
}

impl Serialize for UnitaryMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitaryMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<CycNum>>::deserialize(d)?;
        UnitaryMatrix::from_rows_unchecked(rows).map_err(D::Error::custom)
    }
}

/// A finite group listed element by element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitaryGroup {
    dim: usize,
    elements: Vec<UnitaryMatrix>,
    labels: BTreeMap<String, String>,
}

impl UnitaryGroup {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[UnitaryMatrix] {
        &self.elements
    }

    pub fn labels(&self) -> &BTreeMap<String, String> {
        &self.labels
    }

    pub fn with_label(mut self, k: &str, v: impl Into<String>) -> Self {
        self.labels.insert(k.into(), v.into());
        self
    }

    /// Least common multiple of all entry conductors.
    pub fn conductor(&self) -> u32 {
        self.elements.iter().fold(1, |acc, g| lcm(acc, g.conductor()))
    }

    pub fn contains(&self, g: &UnitaryMatrix) -> bool {
        self.elements.iter().any(|h| h == g)
    }

    /// Every product and inverse stays in the list.
    pub fn is_closed(&self) -> bool {
        let n = self.conductor();
        let keys: HashSet<Vec<BigInt>> = self.elements.iter().map(|g| g.lifted(n).key()).collect();
        let member = |g: &UnitaryMatrix| keys.contains(&g.lifted(lcm(n, g.conductor())).key());
        self.elements.iter().all(|a| {
            member(&a.inverse())
                && self.elements.iter().all(|b| a.mul(b).map(|p| member(&p)).unwrap_or(false))
        })
    }
}

impl<'de> Deserialize<'de> for UnitaryGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            elements: Vec<UnitaryMatrix>,
            #[serde(default)]
            labels: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(d)?;
        let g = group_from_elements(raw.dim, raw.elements, raw.labels).map_err(D::Error::custom)?;
        Ok(g)
    }
}

/// Validate an explicit element list: unitary, duplicate-free, closed.
pub fn group_from_elements(
    dim: usize,
    elements: Vec<UnitaryMatrix>,
    labels: BTreeMap<String, String>,
) -> Result<UnitaryGroup> {
    if elements.is_empty() {
        return Err(Error::BadParameters("group must have at least one element".into()));
    }
    for g in &elements {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
        }
        if !g.is_unitary() {
            return Err(Error::NotUnitary(format!("element {g}")));
        }
    }
    let n = elements.iter().fold(1, |acc, g| lcm(acc, g.conductor()));
    let mut seen = HashSet::new();
    let mut keyed = Vec::new();
    for g in elements {
        let g = g.lifted(n);
        let k = g.key();
        if seen.insert(k.clone()) {
            keyed.push((k, g));
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let grp = UnitaryGroup { dim, elements: keyed.into_iter().map(|(_, g)| g).collect(), labels };
    if !grp.is_closed() {
        return Err(Error::BadParameters("element list is not closed under products".into()));
    }
    Ok(grp)
}

/// Breadth-first closure of the generators.
pub fn close_group(generators: &[UnitaryMatrix], max_order: usize) -> Result<UnitaryGroup> {
    if max_order == 0 {
        return Err(Error::BadParameters("max_order must be at least 1".into()));
    }
    let Some(first) = generators.first() else {
        return Err(Error::BadParameters("at least one generator is required".into()));
    };
    let dim = first.dim();
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
        }
        if !g.is_unitary() {
            return Err(Error::NotUnitary(format!("generator {g}")));
        }
    }
    let n = generators.iter().fold(1, |acc, g| lcm(acc, g.conductor()));
    let gens: Vec<UnitaryMatrix> = generators.iter().map(|g| g.lifted(n)).collect();
    let id = UnitaryMatrix::identity(dim).lifted(n);
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut found: Vec<(Vec<BigInt>, UnitaryMatrix)> = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.key());
    found.push((id.key(), id.clone()));
    queue.push_back(id);
    while let Some(h) = queue.pop_front() {
        for g in &gens {
            let p = h.mul(g)?.lifted(n);
            let k = p.key();
            if seen.insert(k.clone()) {
                if found.len() >= max_order {
                    return Err(Error::OrderExceeded { max_order });
                }
                found.push((k, p.clone()));
                queue.push_back(p);
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(UnitaryGroup { dim, elements: found.into_iter().map(|(_, g)| g).collect(), labels: BTreeMap::new() })
}

fn gens_label(gens: &[UnitaryMatrix]) -> String {
    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

/// Cyclic group of order `p` generated by `diag(zeta_p, zeta_p^q)`.
pub fn make_gamma_pq(p: u32, q: u32) -> Result<UnitaryGroup> {
    if p < 2 || q < 1 || q >= p {
        return Err(Error::BadParameters(format!("need p >= 2 and 1 <= q <= p-1, got p={p}, q={q}")));
    }
    let a = UnitaryMatrix::diagonal(vec![
        CycNum::root_of_unity(p, 1),
        CycNum::root_of_unity(p, q as i64),
    ]);
    Ok(close_group(&[a.clone()], DEFAULT_MAX_ORDER)?
        .with_label("family", "gamma-pq")
        .with_label("p", p.to_string())
        .with_label("q", q.to_string())
        .with_label("generators", gens_label(&[a])))
}

/// Cyclic group of order `p` generated by `zeta_p I_n`.
pub fn make_scalar_cyclic(p: u32, n: usize) -> Result<UnitaryGroup> {
    if p < 1 || n < 1 {
        return Err(Error::BadParameters(format!("need p >= 1 and n >= 1, got p={p}, n={n}")));
    }
    let a = UnitaryMatrix::scalar(n, CycNum::root_of_unity(p, 1));
    Ok(close_group(&[a.clone()], DEFAULT_MAX_ORDER)?
        .with_label("family", "scalar")
        .with_label("p", p.to_string())
        .with_label("n", n.to_string())
        .with_label("generators", gens_label(&[a])))
}

/// `diag(zeta_p, zeta_p^-1)`.
pub fn dihedral_rotation(p: u32) -> UnitaryMatrix {
    UnitaryMatrix::diagonal(vec![CycNum::root_of_unity(p, 1), CycNum::root_of_unity(p, -1)])
}

/// Dihedral group of order `2p` generated by `diag(zeta_p, zeta_p^-1)` and the swap.
pub fn make_dihedral(p: u32) -> Result<UnitaryGroup> {
    if p < 2 {
        return Err(Error::BadParameters(format!("need p >= 2, got p={p}")));
    }
    let gens = [dihedral_rotation(p), UnitaryMatrix::swap()];
    Ok(close_group(&gens, DEFAULT_MAX_ORDER)?
        .with_label("family", "dihedral")
        .with_label("p", p.to_string())
        .with_label("generators", gens_label(&gens)))
}

/// The products `B^j A^k` (`j < q`, `k < p`) with `A = diag(zeta_p, zeta_p^-1)`,
/// when they are distinct and form a group.
pub fn metacyclic_enumeration(p: u32, q: u32, b: &UnitaryMatrix) -> Result<Vec<UnitaryMatrix>> {
    if p < 2 || q < 1 {
        return Err(Error::BadParameters(format!("need p >= 2 and q >= 1, got p={p}, q={q}")));
    }
    if b.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: b.dim() });
    }
    if !b.is_unitary() {
        return Err(Error::NotUnitary(format!("B = {b}")));
    }
    if !b.pow(q as i64).is_identity() {
        return Err(Error::EnumerationInvalid(format!("B^{q} is not the identity")));
    }
    let a = dihedral_rotation(p);
    let mut out = Vec::with_capacity((p * q) as usize);
    for j in 0..q as i64 {
        let bj = b.pow(j);
        for k in 0..p as i64 {
            out.push(bj.mul(&a.pow(k))?);
        }
    }
    let grp = group_from_elements(2, out.clone(), BTreeMap::new())
        .map_err(|e| Error::EnumerationInvalid(format!("B^j A^k list is not a group: {e}")))?;
    if grp.order() != out.len() {
        return Err(Error::EnumerationInvalid("B^j A^k products collide".into()));
    }
    Ok(out)
}

/// Group generated by `A = diag(zeta_p, zeta_p^-1)` and `B` with `B^q = I`.
pub fn make_metacyclic(p: u32, q: u32, b: &UnitaryMatrix) -> Result<UnitaryGroup> {
    if p < 2 || q < 1 {
        return Err(Error::BadParameters(format!("need p >= 2 and q >= 1, got p={p}, q={q}")));
    }
    if !b.is_unitary() {
        return Err(Error::NotUnitary(format!("B = {b}")));
    }
    if b.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: b.dim() });
    }
    if !b.pow(q as i64).is_identity() {
        return Err(Error::BadParameters(format!("B^{q} is not the identity")));
    }
    let labels = |g: UnitaryGroup, how: &str| {
        g.with_label("family", "metacyclic")
            .with_label("p", p.to_string())
            .with_label("q", q.to_string())
            .with_label("enumeration", how)
            .with_label("generators", gens_label(&[dihedral_rotation(p), b.clone()]))
    };
    match metacyclic_enumeration(p, q, b) {
        Ok(elems) => Ok(labels(group_from_elements(2, elems, BTreeMap::new())?, "B^j A^k")),
        Err(_) => Ok(labels(close_group(&[dihedral_rotation(p), b.clone()], DEFAULT_MAX_ORDER)?, "closure")),
    }
}

/// Cyclic group of order `2m` generated by `[[0, 1], [zeta_m, 0]]`.
pub fn make_twisted_swap(m: u32) -> Result<UnitaryGroup> {
    if m < 1 {
        return Err(Error::BadParameters("need m >= 1".into()));
    }
    let a = UnitaryMatrix::from_rows_unchecked(vec![
        vec![CycNum::zero(1), CycNum::one(1)],
        vec![CycNum::root_of_unity(m, 1), CycNum::zero(1)],
    ])?;
    Ok(close_group(&[a.clone()], DEFAULT_MAX_ORDER)?
        .with_label("family", "twisted-swap")
        .with_label("m", m.to_string())
        .with_label("generators", gens_label(&[a])))
}
