//! Polynomial maps `Q(2, 2p+1) -> Q(N(p), 2p+1)` of degree `2p` that keep the
//! number of negative directions.
//!
//! Start from `f_{2p,2}(x, y)`, which equals 1 on `x + y = 1` and has only even
//! powers of `x`. Flipping `x -> -x`, splitting `y -> Y1 + Y2` and
//! `x -> X1 + ... + X_{2p+1}` gives `W(X, Y)`, equal to 1 on
//! `-sum X + sum Y = 1`. Reading each term `c X^a Y^b` as `c |z^(a,b)|^2` yields
//! the map.
//!
//! Source convention: a hyperquadric `Q(a, b)` in `C^(a+b)` is
//! `-sum_{j<b} |z_j|^2 + sum_{j>=b} |z_j|^2 = 1`, negative variables first.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::fpq::fp2_recurrence;
use crate::hermpoly::{graded_cmp, Form, HermPoly, MomentPoly};
use crate::signature::{MapComponent, QuadMap};
use crate::{Error, Result};

/// `W(X_1..X_{2p+1}, Y_1, Y_2)` with its construction parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPoly {
    p: u32,
    poly: MomentPoly,
}

impl SplitPoly {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn poly(&self) -> &MomentPoly {
        &self.poly
    }

    /// `2p + 3`.
    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn negative_count(&self) -> usize {
        self.poly.negative_count()
    }

    /// `N(p)`.
    pub fn positive_count(&self) -> usize {
        self.poly.positive_count()
    }

    /// `W - 1` reduced onto the plane `-sum X + sum Y = 1`.
    pub fn plane_remainder(&self) -> Result<MomentPoly> {
        let (a, c) = plane(self.p);
        let n = self.dim();
        self.poly.sub(&MomentPoly::one(n))?.reduce_affine(&a, &c, n - 2)
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.poly.eval(x)
    }
}

impl fmt::Display for SplitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let mut names: Vec<String> = (1..n - 1).map(|j| format!("X{j}")).collect();
        names.push("Y1".into());
        names.push("Y2".into());
        write!(f, "{}", self.poly.render(&names))
    }
}

/// Coefficients `a` and constant `c` of `sum a_j x_j + c = 0` for the source plane.
fn plane(p: u32) -> (Vec<BigRational>, BigRational) {
    let k = 2 * p as usize + 1;
    let mut a = vec![-BigRational::one(); k];
    a.extend([BigRational::one(), BigRational::one()]);
    (a, -BigRational::one())
}

pub fn build_w(p: u32) -> Result<SplitPoly> {
    if p == 0 {
        return Err(Error::BadParameters("need p >= 1".into()));
    }
    let f = fp2_recurrence(2 * p)?;
    if f.has_odd_power(0) {
        return Err(Error::OddPowerPresent(format!("f_{{{},2}} = {f}", 2 * p)));
    }
    let x = MomentPoly::var(2, 0);
    let y = MomentPoly::var(2, 1);
    let flipped = f.compose(&[x.scale(&-BigRational::one()), y], 2)?;
    let y_split = flipped.compose(&[MomentPoly::var(3, 0), MomentPoly::var_sum(3, 1..3)], 3)?;
    let k = 2 * p as usize + 1;
    let n = k + 2;
    let images = [MomentPoly::var_sum(n, 0..k), MomentPoly::var(n, k), MomentPoly::var(n, k + 1)];
    let w = SplitPoly { p, poly: y_split.compose(&images, n)? };
    let rem = w.plane_remainder()?;
    if !rem.is_zero() {
        return Err(Error::VerificationFailed(format!("W - 1 on the plane leaves {rem}")));
    }
    Ok(w)
}

/// Map whose squared-norm difference is the given moment polynomial, one
/// monomial component per term.
pub fn monomial_map(w: &MomentPoly) -> QuadMap {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (e, c) in w.terms() {
        let comp = MapComponent::monomial(e.clone(), c.abs());
        if c.is_negative() {
            minus.push(comp);
        } else {
            plus.push(comp);
        }
    }
    let key = |c: &MapComponent| c.as_monomial().cloned().unwrap_or_default();
    plus.sort_by(|a, b| graded_cmp(&key(a), &key(b)));
    minus.sort_by(|a, b| graded_cmp(&key(a), &key(b)));
    QuadMap { dim: w.dim(), plus, minus, exact: true }
}

/// `g_p : Q(2, 2p+1) -> Q(N(p), 2p+1)`.
pub fn build_gp(p: u32) -> Result<QuadMap> {
    Ok(monomial_map(build_w(p)?.poly()))
}

/// Outcome of checking `|F|^2 - |G|^2 = 1` on a source hyperquadric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadMapReport {
    /// `(a, b)` of the source, negative variables first.
    pub source: (usize, usize),
    /// `(|F|, |G|)`.
    pub target: (usize, usize),
    pub degree: u32,
    /// `|F|^2 - |G|^2 - 1` reduced modulo the source; empty when verified.
    #[serde(serialize_with = "ser_display")]
    pub remainder: HermPoly,
    pub verified: bool,
}

fn ser_display<S: serde::Serializer>(h: &HermPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&h.to_string())
}

/// Signs of `Q(a, b)`: `-1` on the first `b` variables, `+1` on the rest.
pub fn quadric_signs(a: usize, b: usize) -> Vec<i64> {
    std::iter::repeat_n(-1, b).chain(std::iter::repeat_n(1, a)).collect()
}

pub fn verify_quadmap(g: &QuadMap, source: (usize, usize)) -> Result<QuadMapReport> {
    let (a, b) = source;
    if a + b != g.dim || a + b == 0 {
        return Err(Error::DimensionMismatch { expected: g.dim, found: a + b });
    }
    let signs = quadric_signs(a, b);
    let diff = g.norm_difference().sub(&HermPoly::one(g.dim, Form::Diagonal))?;
    let remainder = match diff.to_moment() {
        Ok(m) => {
            let coeffs: Vec<BigRational> = signs.iter().map(|&s| BigRational::from_integer(s.into())).collect();
            m.reduce_affine(&coeffs, &-BigRational::one(), cheapest_elimination(&m))?.to_herm()
        }
        Err(_) => diff.reduce_quadric(&signs)?,
    };
    let verified = remainder.is_zero();
    Ok(QuadMapReport { source, target: g.signature(), degree: g.degree(), remainder, verified })
}

/// Variable whose elimination expands the fewest terms, estimated by the
/// size of `(linear form)^k` summed over terms.
fn cheapest_elimination(m: &MomentPoly) -> usize {
    let n = m.dim() as u64;
    let binom = |top: u64, k: u64| (1..=k).fold(1f64, |acc, i| acc * (top - k + i) as f64 / i as f64);
    (0..m.dim())
        .map(|j| {
            let cost: f64 = m.terms().map(|(e, _)| binom(n + e[j] as u64 - 1, e[j] as u64)).sum();
            (j, cost)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map_or(0, |(j, _)| j)
}

/// No component vanishes and no two are proportional.
pub fn is_nondegenerate(g: &QuadMap) -> bool {
    let comps: Vec<_> = g.plus.iter().chain(&g.minus).collect();
    if comps.iter().any(|c| c.poly.is_zero() || c.coeff_sq.is_zero()) {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    comps.iter().all(|c| seen.insert(serde_json::to_string(&c.poly.normalized()).expect("serializable")))
}

/// Copy of `g` with `delta` added to the squared coefficient of component
/// `index` (plus components first, then minus).
pub fn perturb_component(g: &QuadMap, index: usize, delta: &BigRational) -> Result<QuadMap> {
    let mut out = g.clone();
    let np = out.plus.len();
    let slot = if index < np {
        &mut out.plus[index]
    } else {
        out.minus
            .get_mut(index - np)
            .ok_or_else(|| Error::BadParameters(format!("component {index} out of range")))?
    };
    slot.coeff_sq = slot.coeff_sq.add(&CycNum::from_rational(delta));
    Ok(out)
}

/// `N(p)` for `p` in the range.
pub fn positive_counts(ps: impl IntoIterator<Item = u32>) -> Result<Vec<(u32, usize)>> {
    ps.into_iter().map(|p| Ok((p, build_w(p)?.positive_count()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_gamma_pq;
    use crate::invariant::phi_gamma_direct;
    use proptest::prelude::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn p1_matches_worked_example() {
        let w = build_w(1).unwrap();
        assert_eq!(w.positive_count(), 8);
        assert_eq!(w.negative_count(), 3);
        // positive part is (X1+X2+X3)^2 + 2(Y1+Y2), negative part (Y1+Y2)^2
        let n = 5;
        let xs = MomentPoly::var_sum(n, 0..3);
        let ys = MomentPoly::var_sum(n, 3..5);
        let pos = xs.pow(2).add(&ys.scale(&int(2))).unwrap();
        assert_eq!(w.poly(), &pos.sub(&ys.pow(2)).unwrap());

        let g = build_gp(1).unwrap();
        assert_eq!(g.signature(), (8, 3));
        assert_eq!(g.degree(), 2);
        let sq = |v: &[MapComponent]| -> Vec<(Vec<u32>, CycNum)> {
            v.iter().map(|c| (c.as_monomial().unwrap().clone(), c.coeff_sq.clone())).collect()
        };
        let one = CycNum::one(1);
        let two = CycNum::from_int(2);
        let mut want_plus = vec![
            (vec![2, 0, 0, 0, 0], one.clone()),
            (vec![0, 2, 0, 0, 0], one.clone()),
            (vec![0, 0, 2, 0, 0], one.clone()),
            (vec![1, 1, 0, 0, 0], two.clone()),
            (vec![1, 0, 1, 0, 0], two.clone()),
            (vec![0, 1, 1, 0, 0], two.clone()),
            (vec![0, 0, 0, 1, 0], two.clone()),
            (vec![0, 0, 0, 0, 1], two.clone()),
        ];
        let mut got_plus = sq(&g.plus);
        want_plus.sort_by(|a, b| a.0.cmp(&b.0));
        got_plus.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(got_plus, want_plus);
        let mut got_minus = sq(&g.minus);
        got_minus.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(
            got_minus,
            vec![(vec![0, 0, 0, 0, 2], one.clone()), (vec![0, 0, 0, 1, 1], two), (vec![0, 0, 0, 2, 0], one)]
        );
        assert_eq!(g.minus[1].to_string(), "√2 z4z5");
        let rep = verify_quadmap(&g, (2, 3)).unwrap();
        assert!(rep.verified);
        assert_eq!(rep.target, (8, 3));
    }

    #[test]
    fn p2_against_direct_expansion() {
        let w = build_w(2).unwrap();
        assert_eq!(w.negative_count(), 5);
        let f = phi_gamma_direct(&make_gamma_pq(4, 2).unwrap()).unwrap().diagonal().to_moment().unwrap();
        let pts = [
            [q(1, 2), q(-1, 3), q(2, 5), q(0, 1), q(3, 7), q(1, 1), q(-2, 9)],
            [q(5, 3), q(1, 4), q(-1, 1), q(2, 1), q(1, 6), q(-3, 2), q(4, 5)],
        ];
        for x in &pts {
            let xs: BigRational = x[..5].iter().sum();
            let ys = &x[5] + &x[6];
            assert_eq!(w.eval(x), f.eval(&[-xs, ys]));
        }
    }

    #[test]
    fn degrees_and_counts() {
        for p in 1..=3 {
            let g = build_gp(p).unwrap();
            assert_eq!(g.degree(), 2 * p);
            assert_eq!(g.minus.len(), 2 * p as usize + 1);
            assert!(is_nondegenerate(&g));
            assert!(verify_quadmap(&g, (2, 2 * p as usize + 1)).unwrap().verified);
        }
    }

    #[test]
    fn identity_on_sphere() {
        let id = QuadMap {
            dim: 3,
            plus: (0..3)
                .map(|j| {
                    let mut e = vec![0; 3];
                    e[j] = 1;
                    MapComponent::monomial(e, int(1))
                })
                .collect(),
            minus: vec![],
            exact: true,
        };
        assert!(verify_quadmap(&id, (3, 0)).unwrap().verified);
    }

    #[test]
    fn perturbation_detected() {
        let g = build_gp(1).unwrap();
        for i in 0..11 {
            let bad = perturb_component(&g, i, &q(1, 3)).unwrap();
            let rep = verify_quadmap(&bad, (2, 3)).unwrap();
            assert!(!rep.verified, "component {i}");
        }
        assert!(perturb_component(&g, 11, &q(1, 1)).is_err());
    }

    #[test]
    fn zero_rejected() {
        assert!(matches!(build_w(0), Err(Error::BadParameters(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn w_is_one_on_the_plane(v in prop::collection::vec((-9i64..10, 1i64..6), 6)) {
            let w = build_w(2).unwrap();
            let mut x: Vec<BigRational> = v.iter().map(|&(n, d)| q(n, d)).collect();
            // solve for Y1 on -sum X + Y1 + Y2 = 1
            let xs: BigRational = x[..5].iter().sum();
            let y1 = BigRational::one() + xs - &x[5];
            x.insert(5, y1);
            prop_assert_eq!(w.eval(&x), BigRational::one());
        }
    }
}
