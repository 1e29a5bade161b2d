//! The bivariate family `f_{p,q}(x, y)`: the invariant polynomial of the cyclic
//! group generated by `diag(zeta_p, zeta_p^q)` written in `x = |z_1|^2`,
//! `y = |z_2|^2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::expand::FormBatch;
use crate::hermpoly::{graded_cmp, Form, MomentPoly};
use crate::interval::Interval;
use crate::json::JsonInt;
use crate::{Error, Result};

fn check_pq(p: u32, q: u32) -> Result<()> {
    if p < 2 || q < 1 || q >= p {
        return Err(Error::BadParameters(format!("need p >= 2 and 1 <= q <= p-1, got p={p}, q={q}")));
    }
    Ok(())
}

/// `f_{p,q}` via `1 - prod_k (1 - zeta^k x - zeta^(qk) y)`, without building
/// the group or the bidegree expansion.
pub fn fpq_compute(p: u32, q: u32) -> Result<MomentPoly> {
    check_pq(p, q)?;
    let forms = (0..p as i64)
        .map(|k| {
            vec![
                (0, 0, CycNum::root_of_unity(p, k)),
                (1, 1, CycNum::root_of_unity(p, k * q as i64)),
            ]
        })
        .collect();
    let phi = FormBatch::from_entries(2, p, forms)?.product_complement(Form::Diagonal)?;
    let f = phi.to_moment().map_err(|e| Error::NonIntegerCoefficient(e.to_string()))?;
    if !f.has_integer_coefficients() {
        return Err(Error::NonIntegerCoefficient(format!("f_{{{p},{q}}} = {f}")));
    }
    Ok(f)
}

/// `f - 1` reduced modulo `x + y - 1`; zero exactly when `f = 1` on that line.
pub fn line_remainder(f: &MomentPoly) -> Result<MomentPoly> {
    let one = BigRational::one();
    let g = f.sub(&MomentPoly::one(f.dim()))?;
    g.reduce_affine(&vec![one.clone(); f.dim()], &-one, 0)
}

/// `f_{p,2}` from `a_0 = 2`, `a_1 = x`, `a_k = x a_{k-1} + y a_{k-2}` and
/// `f = a_p + (-1)^(p+1) y^p`.
pub fn fp2_recurrence(p: u32) -> Result<MomentPoly> {
    if p < 2 {
        return Err(Error::BadParameters(format!("need p >= 2, got p={p}")));
    }
    let x = MomentPoly::var(2, 0);
    let y = MomentPoly::var(2, 1);
    let mut prev = MomentPoly::constant(2, BigRational::from_integer(2.into()));
    let mut cur = x.clone();
    for _ in 2..=p {
        let next = x.mul(&cur)?.add(&y.mul(&prev)?)?;
        prev = std::mem::replace(&mut cur, next);
    }
    let sign = if p % 2 == 1 { 1 } else { -1 };
    cur.add(&MomentPoly::monomial(2, vec![0, p], BigRational::from_integer(sign.into())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeVerdict {
    pub p: u32,
    pub q: u32,
    /// Every coefficient of `f_{p,q} - x^p - y^p` is divisible by `p`.
    pub congruent: bool,
    /// First offending `(exponent, coefficient)` in ascending graded order.
    pub witness: Option<(Vec<u32>, JsonInt)>,
}

/// The coefficient congruence for `f_{p,q}`.
pub fn prime_test(p: u32, q: u32) -> Result<PrimeVerdict> {
    check_pq(p, q)?;
    let f = fpq_compute(p, q)?;
    Ok(prime_test_poly(&f, p, q))
}

/// The congruence applied to an already computed `f`.
pub fn prime_test_poly(f: &MomentPoly, p: u32, q: u32) -> PrimeVerdict {
    let pp = BigInt::from(p);
    let one = BigRational::one();
    let rest = f
        .sub(&MomentPoly::monomial(2, vec![p, 0], one.clone()))
        .and_then(|g| g.sub(&MomentPoly::monomial(2, vec![0, p], one)))
        .expect("bivariate");
    let witness = rest
        .graded_terms()
        .into_iter()
        .find(|(_, c)| !c.is_integer() || !c.to_integer().is_multiple_of(&pp))
        .map(|(e, c)| (e.clone(), JsonInt(c.to_integer())));
    PrimeVerdict { p, q, congruent: witness.is_none(), witness }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub p: u32,
    /// Sum of the coefficients of `f_{p,2}`.
    pub s_p: JsonInt,
    /// `S_p^(1/p)` and its distance to `(1 + sqrt 5)/2`, as midpoints.
    pub root: String,
    pub gap: String,
    #[serde(skip)]
    pub root_interval: Interval,
    #[serde(skip)]
    pub gap_interval: Interval,
}

/// The golden ratio as a certified interval.
pub fn golden_ratio(prec: u32) -> Interval {
    let s5 = Interval::from_i64(5, prec).sqrt().expect("positive");
    s5.add(&Interval::one(prec)).div_int(&BigInt::from(2))
}

/// `S_p = f_{p,2}(1, 1)` and the certified `p`-th root.
pub fn golden_ratio_scalar(p: u32, prec: u32) -> Result<GoldenReport> {
    if p < 3 {
        return Err(Error::BadParameters(format!("need p >= 3, got p={p}")));
    }
    let s = fp2_recurrence(p)?.coefficient_sum().to_integer();
    let root = Interval::from_int(&s, prec)
        .nth_root(p)
        .ok_or_else(|| Error::DomainViolation(format!("S_{p} = {s} is not positive")))?;
    let gap = root.sub(&golden_ratio(prec)).abs();
    Ok(GoldenReport {
        p,
        s_p: JsonInt(s),
        root: root.to_decimal(12),
        gap: gap.to_scientific(6),
        root_interval: root,
        gap_interval: gap,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PmOneStructure {
    pub p: u32,
    /// `n_j` for `j = 1 ..= p/2` in `f_{p,p-1} = x^p + y^p + sum_j n_j (xy)^j`.
    pub n: Vec<JsonInt>,
    pub positive: usize,
    pub negative: usize,
    pub expected_positive: usize,
    pub expected_negative: usize,
}

/// Expected sign counts of `f_{p,p-1}` by the residue of `p` mod 4.
pub fn pm1_expected_counts(p: u32) -> (usize, usize) {
    let k = (p / 4) as usize;
    match p % 4 {
        0 | 1 => (k + 2, k),
        _ => (k + 3, k),
    }
}

/// Shape and sign pattern of `f_{p,p-1}`.
pub fn fp_pm1_structure(p: u32) -> Result<PmOneStructure> {
    if p < 3 {
        return Err(Error::BadParameters(format!("need p >= 3, got p={p}")));
    }
    let f = fpq_compute(p, p - 1)?;
    fp_pm1_structure_of(&f, p)
}

/// The structural checks applied to a given `f`.
pub fn fp_pm1_structure_of(f: &MomentPoly, p: u32) -> Result<PmOneStructure> {
    let violation = |msg: String| Error::StructureViolation(format!("p={p}: {msg}"));
    let one = BigRational::one();
    if f.coeff(&[p, 0]) != one || f.coeff(&[0, p]) != one {
        return Err(violation("x^p and y^p must have coefficient 1".into()));
    }
    let mut n = vec![BigInt::zero(); (p / 2) as usize];
    for (e, c) in f.terms() {
        if *e == [p, 0] || *e == [0, p] {
            continue;
        }
        if e[0] != e[1] || e[0] == 0 {
            return Err(violation(format!("unexpected term at {e:?}")));
        }
        let j = e[0];
        if 2 * j > p {
            return Err(violation(format!("n_{j} = {c} is nonzero but 2j > p")));
        }
        n[(j - 1) as usize] = c.to_integer();
    }
    for (i, c) in n.iter().enumerate() {
        let j = i + 1;
        let ok = if j % 2 == 1 { c.is_positive() } else { c.is_negative() };
        if !ok {
            return Err(violation(format!("n_{j} = {c} has the wrong sign")));
        }
    }
    let positive = f.positive_count();
    let negative = f.negative_count();
    let (ep, en) = pm1_expected_counts(p);
    if (positive, negative) != (ep, en) {
        return Err(violation(format!("counts ({positive}, {negative}) differ from ({ep}, {en})")));
    }
    Ok(PmOneStructure {
        p,
        n: n.into_iter().map(JsonInt).collect(),
        positive,
        negative,
        expected_positive: ep,
        expected_negative: en,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitGap {
    pub p: u32,
    pub x: String,
    pub y: String,
    /// `f_{p,2}(x, y)^(1/p)`.
    pub value: String,
    /// `(x + sqrt(x^2 + 4y)) / 2`.
    pub target: String,
    /// `|value - target|`.
    pub gap: String,
    /// `h_p = f / target^p - 1`.
    pub h_p: String,
    #[serde(skip)]
    pub gap_interval: Interval,
}

/// Whether `x, y >= 0` and `x + sqrt(x^2 + 4y) > 2y`.
pub fn in_limit_domain(x: &BigRational, y: &BigRational) -> bool {
    if x.is_negative() || y.is_negative() {
        return false;
    }
    let rhs = BigRational::from_integer(2.into()) * y - x;
    if rhs.is_negative() {
        return true;
    }
    x * x + BigRational::from_integer(4.into()) * y > &rhs * &rhs
}

/// Convergence data for `f_{p,2}^(1/p)` at the given points.
pub fn limit_gaps(p: u32, points: &[(BigRational, BigRational)], prec: u32) -> Result<Vec<LimitGap>> {
    let f = fp2_recurrence(p)?;
    let mut out = Vec::with_capacity(points.len());
    for (x, y) in points {
        if !in_limit_domain(x, y) {
            return Err(Error::DomainViolation(format!("({x}, {y}) is outside x + sqrt(x^2+4y) > 2y, x, y >= 0")));
        }
        let v = f.eval(&[x.clone(), y.clone()]);
        let vi = Interval::from_rational(&v, prec);
        let value = vi
            .nth_root(p)
            .ok_or_else(|| Error::DomainViolation(format!("f_{{{p},2}}({x}, {y}) = {v} is not positive")))?;
        let xi = Interval::from_rational(x, prec);
        let disc = xi.square().add(&Interval::from_rational(&(y * BigRational::from_integer(4.into())), prec));
        let target = xi.add(&disc.sqrt().expect("nonnegative")).div_int(&BigInt::from(2));
        let gap = value.sub(&target).abs();
        let h = vi.div(&target.pow(p)).map(|r| r.sub(&Interval::one(prec)));
        out.push(LimitGap {
            p,
            x: x.to_string(),
            y: y.to_string(),
            value: value.to_decimal(12),
            target: target.to_decimal(12),
            gap: gap.to_scientific(6),
            h_p: h.map(|h| h.to_decimal(12)).unwrap_or_else(|| "undefined".into()),
            gap_interval: gap,
        });
    }
    Ok(out)
}

/// Coefficients of `f` in ascending graded order, as `(exponent, value)`.
pub fn coefficient_list(f: &MomentPoly) -> Vec<(Vec<u32>, JsonInt)> {
    let mut v: Vec<_> = f.terms().map(|(e, c)| (e.clone(), JsonInt(c.to_integer()))).collect();
    v.sort_by(|a, b| graded_cmp(&a.0, &b.0));
    v
}
