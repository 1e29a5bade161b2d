//! The invariant polynomial `Phi(z, w) = 1 - prod_g (1 - <g z, w>)` of a finite
//! unitary group, its factorized forms for metacyclic and dihedral groups, and
//! Reynolds averaging of monomials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::expand::FormBatch;
use crate::fpq::fpq_compute;
use crate::groups::{metacyclic_enumeration, UnitaryGroup, UnitaryMatrix};
use crate::hermpoly::{BiMonomial, Form, HermPoly, HoloPoly, Side};
use crate::{Error, Result};

/// `Phi` for the group, in polarized form.
pub fn phi_gamma(g: &UnitaryGroup) -> Result<HermPoly> {
    let mats: Vec<Vec<Vec<CycNum>>> = g.elements().iter().map(UnitaryMatrix::rows).collect();
    let phi = FormBatch::from_matrices(g.dim(), &mats)?.product_complement(Form::Polarized)?;
    phi.check_hermitian()?;
    Ok(phi)
}

/// `Phi` by multiplying the factors one at a time with plain polynomial
/// arithmetic. Slow; kept as an independent reference.
pub fn phi_gamma_direct(g: &UnitaryGroup) -> Result<HermPoly> {
    let dim = g.dim();
    let one = HermPoly::one(dim, Form::Polarized);
    let ip = HermPoly::inner_product(dim);
    let mut prod = one.clone();
    for el in g.elements() {
        let factor = one.sub(&ip.substitute(el, Side::Z)?)?;
        prod = prod.mul(&factor)?;
    }
    let phi = one.sub(&prod)?;
    phi.check_hermitian()?;
    Ok(phi)
}

fn polarized_var(alpha: [u32; 2], beta: [u32; 2]) -> HermPoly {
    HermPoly::monomial(2, Form::Polarized, alpha.to_vec(), beta.to_vec(), CycNum::one(1))
}

/// `x = z1 conj(w1)`, `y = z2 conj(w2)`, `s = z2 conj(w1)`, `t = z1 conj(w2)`.
pub fn xyst() -> [HermPoly; 4] {
    [
        polarized_var([1, 0], [1, 0]),
        polarized_var([0, 1], [0, 1]),
        polarized_var([0, 1], [1, 0]),
        polarized_var([1, 0], [0, 1]),
    ]
}

/// `Phi` for the group generated by `A = diag(zeta_p, zeta_p^-1)` and `B`,
/// as `1 - prod_{j<q} (1 - Phi_C(z, B^-j w))` with `C` the cyclic group of `A`.
pub fn phi_metacyclic(p: u32, q: u32, b: &UnitaryMatrix) -> Result<HermPoly> {
    metacyclic_enumeration(p, q, b)?;
    let [x, y, _, _] = xyst();
    let phi_c = fpq_compute(p, p - 1)?.substitute_herm(&[x, y])?;
    let one = HermPoly::one(2, Form::Polarized);
    let mut prod = one.clone();
    for j in 0..q as i64 {
        let shifted = phi_c.substitute(&b.pow(-j), Side::W)?;
        prod = prod.mul(&one.sub(&shifted)?)?;
    }
    let phi = one.sub(&prod)?;
    phi.check_hermitian()?;
    Ok(phi)
}

/// `Phi` for the dihedral group of order `2p` as
/// `f(x, y) + f(s, t) - f(x, y) f(s, t)` with `f = f_{p,p-1}`.
pub fn phi_dihedral(p: u32) -> Result<HermPoly> {
    if p < 2 {
        return Err(Error::BadParameters(format!("need p >= 2, got p={p}")));
    }
    let f = fpq_compute(p, p - 1)?;
    let [x, y, s, t] = xyst();
    let a = f.substitute_herm(&[x, y])?;
    let b = f.substitute_herm(&[s, t])?;
    let phi = a.add(&b)?.sub(&a.mul(&b)?)?;
    phi.check_hermitian()?;
    Ok(phi)
}

/// Closed form for the cyclic group generated by `[[0, 1], [zeta_m, 0]]`:
/// `(x + y)^m + (s + zeta_m t)^m - (x + y)^m (s + zeta_m t)^m`.
pub fn phi_twisted_swap(m: u32) -> Result<HermPoly> {
    if m < 1 {
        return Err(Error::BadParameters("need m >= 1".into()));
    }
    let [x, y, s, t] = xyst();
    let a = x.add(&y)?.pow(m);
    let b = s.add(&t.scale(&CycNum::root_of_unity(m, 1)))?.pow(m);
    let phi = a.add(&b)?.sub(&a.mul(&b)?)?;
    phi.check_hermitian()?;
    Ok(phi)
}

/// Reynolds averages of all monomials of degree at most `max_degree`
/// (defaults to the group order), nonzero ones only, each scaled so its first
/// coefficient is 1, without repeats.
pub fn noether_basis(g: &UnitaryGroup, max_degree: Option<u32>) -> Result<Vec<HoloPoly>> {
    let dim = g.dim();
    let d = max_degree.unwrap_or(g.order() as u32);
    let inv_order = CycNum::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(g.order())));
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for deg in 0..=d {
        for e in monomials_of_degree(dim, deg) {
            let m = HoloPoly::monomial(dim, e, CycNum::one(1));
            let mut avg = HoloPoly::zero(dim);
            for el in g.elements() {
                avg = avg.add(&m.substitute(el)?)?;
            }
            let avg = avg.scale(&inv_order);
            if avg.is_zero() {
                continue;
            }
            let norm = avg.normalized();
            let key = serde_json::to_string(&norm).expect("serializable");
            if seen.insert(key) {
                out.push(norm);
            }
        }
    }
    Ok(out)
}

/// Exponent vectors of total degree `deg`, largest leading exponent first.
pub fn monomials_of_degree(dim: usize, deg: u32) -> Vec<Vec<u32>> {
    if dim == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=deg).rev() {
        for mut rest in monomials_of_degree(dim - 1, deg - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Pass/fail for the defining properties of `Phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub order: usize,
    pub constant_term_zero: bool,
    pub degree_z: u32,
    pub degree_matches_order: bool,
    pub sphere_remainder_zero: bool,
    pub invariant: bool,
    pub hermitian: bool,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.constant_term_zero
            && self.degree_matches_order
            && self.sphere_remainder_zero
            && self.invariant
            && self.hermitian
    }
}

/// Check `Phi(0,0) = 0`, `deg_z Phi = |G|`, `Phi = 1` on the sphere, and
/// `Phi(g z, w) = Phi(z, w)` for every element.
pub fn check_properties(g: &UnitaryGroup, phi: &HermPoly) -> Result<PropertyReport> {
    let dim = phi.dim();
    let diag = phi.diagonal();
    let remainder = diag.sub(&HermPoly::one(dim, Form::Diagonal))?.reduce_sphere();
    let mut invariant = true;
    for el in g.elements() {
        if phi.substitute(el, Side::Z)? != *phi {
            invariant = false;
            break;
        }
    }
    let degree_z = phi.degree_z();
    Ok(PropertyReport {
        order: g.order(),
        constant_term_zero: phi.constant_term().is_zero(),
        degree_z,
        degree_matches_order: degree_z as usize == g.order(),
        sphere_remainder_zero: remainder.is_zero(),
        invariant,
        hermitian: phi.is_hermitian(),
    })
}

/// The polynomial with one coefficient changed by `delta`; for soundness probes.
pub fn perturb(phi: &HermPoly, index: usize, delta: &CycNum) -> HermPoly {
    let terms: Vec<(BiMonomial, CycNum)> = phi
        .terms()
        .enumerate()
        .map(|(i, (m, c))| (m.clone(), if i == index { c.add(delta) } else { c.clone() }))
        .collect();
    HermPoly::from_terms(phi.dim(), phi.form(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::*;
    use crate::hermpoly::MomentPoly;
    use proptest::prelude::*;

    #[test]
    fn trivial_and_roots_in_one_variable() {
        let g = close_group(&[UnitaryMatrix::identity(1)], 10).unwrap();
        let phi = phi_gamma(&g).unwrap();
        assert_eq!(phi, HermPoly::inner_product(1));
        for p in 1..7 {
            let g = make_scalar_cyclic(p, 1).unwrap();
            assert_eq!(phi_gamma(&g).unwrap(), HermPoly::inner_product(1).pow(p));
        }
    }

    #[test]
    fn scalar_group_gives_norm_power() {
        let g = make_scalar_cyclic(6, 2).unwrap();
        let phi = phi_gamma(&g).unwrap();
        assert_eq!(phi, HermPoly::inner_product(2).pow(6));
        let g = make_scalar_cyclic(3, 3).unwrap();
        assert_eq!(phi_gamma(&g).unwrap(), HermPoly::inner_product(3).pow(3));
    }

    #[test]
    fn engine_matches_direct_product() {
        let groups = vec![
            make_gamma_pq(6, 5).unwrap(),
            make_dihedral(4).unwrap(),
            make_twisted_swap(3).unwrap(),
            close_group(&[UnitaryMatrix::fourier(3).unwrap()], 100).unwrap(),
        ];
        for g in groups {
            assert_eq!(phi_gamma(&g).unwrap(), phi_gamma_direct(&g).unwrap());
        }
    }

    #[test]
    fn non_monomial_group_properties() {
        let g = close_group(&[UnitaryMatrix::fourier(3).unwrap()], 100).unwrap();
        let phi = phi_gamma(&g).unwrap();
        assert!(check_properties(&g, &phi).unwrap().all_pass());
    }

    #[test]
    fn gamma_6_5_diagonal() {
        let phi = phi_gamma(&make_gamma_pq(6, 5).unwrap()).unwrap();
        let m = phi.diagonal().to_moment().unwrap();
        let r = |v: i64| BigRational::from_integer(v.into());
        let want = MomentPoly::from_terms(
            2,
            [
                (vec![6, 0], r(1)),
                (vec![0, 6], r(1)),
                (vec![1, 1], r(6)),
                (vec![3, 3], r(2)),
                (vec![2, 2], r(-9)),
            ],
        );
        assert_eq!(m, want);
    }

    #[test]
    fn factorized_forms_agree() {
        for p in 2..7 {
            assert_eq!(phi_dihedral(p).unwrap(), phi_gamma(&make_dihedral(p).unwrap()).unwrap());
        }
        assert_eq!(
            phi_metacyclic(5, 2, &UnitaryMatrix::swap()).unwrap(),
            phi_gamma(&make_dihedral(5).unwrap()).unwrap()
        );
        let id = UnitaryMatrix::identity(2);
        assert_eq!(phi_metacyclic(4, 1, &id).unwrap(), phi_gamma(&make_gamma_pq(4, 3).unwrap()).unwrap());
        let b = UnitaryMatrix::scalar(2, CycNum::root_of_unity(4, 1));
        assert_eq!(phi_metacyclic(3, 4, &b).unwrap(), phi_gamma(&make_metacyclic(3, 4, &b).unwrap()).unwrap());
        assert!(matches!(phi_metacyclic(3, 4, &UnitaryMatrix::swap()), Err(Error::EnumerationInvalid(_))));
        for m in 1..5 {
            assert_eq!(phi_twisted_swap(m).unwrap(), phi_gamma(&make_twisted_swap(m).unwrap()).unwrap());
        }
    }

    #[test]
    fn noether_examples() {
        let g = close_group(&[UnitaryMatrix::identity(1)], 10).unwrap();
        let b = noether_basis(&g, Some(1)).unwrap();
        assert_eq!(b, vec![HoloPoly::one(1), HoloPoly::var(1, 0)]);

        let g = make_gamma_pq(6, 5).unwrap();
        let b = noether_basis(&g, None).unwrap();
        for e in [[1u32, 1], [6, 0], [0, 6], [3, 3]] {
            let m = HoloPoly::monomial(2, e.to_vec(), CycNum::one(1));
            assert!(b.contains(&m), "missing {e:?}");
        }
        // oracle: a monomial survives averaging iff its weight a - b is 0 mod 6
        let count = (0..=6u32).flat_map(|d| (0..=d).map(move |a| (a, d - a))).filter(|(a, b)| (*a as i64 - *b as i64) % 6 == 0).count();
        assert_eq!(b.len(), count);

        let g = make_twisted_swap(3).unwrap();
        let b = noether_basis(&g, None).unwrap();
        let eta = CycNum::root_of_unity(3, 1);
        let p = HoloPoly::from_terms(2, [(vec![3, 0], CycNum::one(1)), (vec![0, 3], CycNum::one(1))]);
        let q = HoloPoly::from_terms(2, [(vec![2, 1], CycNum::one(1)), (vec![1, 2], eta)]);
        assert!(b.contains(&p.normalized()));
        assert!(b.contains(&q.normalized()));
        for f in &b {
            for el in g.elements() {
                assert_eq!(&f.substitute(el).unwrap(), f);
            }
        }
    }

    #[test]
    fn perturbation_breaks_properties() {
        let g = make_gamma_pq(5, 2).unwrap();
        let phi = phi_gamma(&g).unwrap();
        assert!(check_properties(&g, &phi).unwrap().all_pass());
        let bad = perturb(&phi, 1, &CycNum::from_int(1));
        assert!(!check_properties(&g, &bad).unwrap().all_pass());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn properties_hold_for_random_gamma_pq(p in 2u32..11, qs in 0u32..50) {
            let q = 1 + qs % (p - 1);
            let g = make_gamma_pq(p, q).unwrap();
            let phi = phi_gamma(&g).unwrap();
            let r = check_properties(&g, &phi).unwrap();
            prop_assert!(r.all_pass(), "{:?}", r);
            prop_assert!(phi.is_hermitian());
        }

        #[test]
        fn hermitian_for_random_metacyclic(p in 2u32..6, swap in any::<bool>()) {
            let b = if swap { UnitaryMatrix::swap() } else { UnitaryMatrix::scalar(2, CycNum::root_of_unity(4, 1)) };
            let q = if swap { 2 } else { 4 };
            // an even p makes A^(p/2) = -I = B^2 and the enumeration collapses
            let p = if swap { p } else { 2 * (p / 2) + 1 };
            let g = make_metacyclic(p, q, &b).unwrap();
            let phi = phi_gamma(&g).unwrap();
            prop_assert!(phi.is_hermitian());
            prop_assert_eq!(phi, phi_metacyclic(p, q, &b).unwrap());
        }
    }
}
