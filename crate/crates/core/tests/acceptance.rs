//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use crinv_core::fpq::{
    fp2_recurrence, fp_pm1_structure, fpq_compute, golden_ratio_scalar, is_prime, line_remainder,
    pm1_expected_counts, prime_test, prime_test_poly,
};
use crinv_core::groups::{
    make_dihedral, make_gamma_pq, make_metacyclic, make_scalar_cyclic, make_twisted_swap,
};
use crinv_core::invariant::{check_properties, perturb, phi_dihedral, phi_gamma, phi_metacyclic, xyst};
use crinv_core::quadmap::{build_gp, build_w, is_nondegenerate, perturb_component, verify_quadmap};
use crinv_core::signature::{signature_ratio, Family};
use crinv_core::{
    close_group, coeff_matrix, decompose, inertia, CycNum, Form, HermPoly, Inertia, MomentPoly, UnitaryGroup,
    UnitaryMatrix,
};
use num_rational::BigRational;
use num_traits::{One, Signed};

type Outcome = Result<String, String>;

const PREC: u32 = 128;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

fn moment(terms: &[(u32, u32, i64)]) -> MomentPoly {
    MomentPoly::from_terms(2, terms.iter().map(|&(a, b, c)| (vec![a, b], r(c))))
}

fn fixtures() -> Outcome {
    let start = Instant::now();
    let expected = [
        (4, 3, moment(&[(4, 0, 1), (0, 4, 1), (1, 1, 4), (2, 2, -2)])),
        (5, 4, moment(&[(5, 0, 1), (0, 5, 1), (1, 1, 5), (2, 2, -5)])),
        (6, 5, moment(&[(6, 0, 1), (0, 6, 1), (1, 1, 6), (2, 2, -9), (3, 3, 2)])),
        (7, 6, moment(&[(7, 0, 1), (0, 7, 1), (1, 1, 7), (2, 2, -14), (3, 3, 7)])),
    ];
    for (p, q, want) in &expected {
        let got = fpq_compute(*p, *q).map_err(|e| e.to_string())?;
        ensure(&got == want, || format!("f_{{{p},{q}}} = {got}"))?;
    }
    let six = phi_gamma(&make_scalar_cyclic(6, 2).unwrap()).map_err(|e| e.to_string())?;
    let xy = MomentPoly::var_sum(2, 0..2).pow(6);
    ensure(six.diagonal() == xy.to_herm(), || "scalar order 6 is not (x+y)^6".into())?;

    let g65 = phi_gamma(&make_gamma_pq(6, 5).unwrap()).map_err(|e| e.to_string())?;
    let want = moment(&[(6, 0, 1), (0, 6, 1), (1, 1, 6), (3, 3, 2), (2, 2, -9)]).to_herm();
    ensure(g65.diagonal() == want, || format!("Gamma(6,5) gives {}", g65.diagonal()))?;

    // (x+y)^3 + (eta s + conj(eta) t)^3 - product, eta a primitive cube root of unity
    let [x, y, s, t] = xyst();
    let eta = CycNum::root_of_unity(3, 1);
    let a = x.add(&y).unwrap().pow(3);
    let b = s.scale(&eta).add(&t.scale(&eta.conj())).unwrap().pow(3);
    let closed = a.add(&b).unwrap().sub(&a.mul(&b).unwrap()).unwrap();
    let swap = phi_gamma(&make_twisted_swap(3).unwrap()).map_err(|e| e.to_string())?;
    ensure(closed == swap, || "order 6 twisted swap differs from its closed form".into())?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("4 f_pq fixtures, (x+y)^6, Gamma(6,5), twisted swap in {:?}", start.elapsed()))
}

fn small_groups() -> Vec<(String, UnitaryGroup)> {
    let mut out = Vec::new();
    for p in 2..=24u32 {
        for q in 1..p {
            out.push((format!("Gamma({p},{q})"), make_gamma_pq(p, q).unwrap()));
        }
    }
    for p in 1..=24u32 {
        for n in 1..=2usize {
            out.push((format!("scalar({p},{n})"), make_scalar_cyclic(p, n).unwrap()));
        }
    }
    for p in 1..=8u32 {
        out.push((format!("scalar({p},3)"), make_scalar_cyclic(p, 3).unwrap()));
    }
    for p in 2..=12u32 {
        out.push((format!("dihedral({p})"), make_dihedral(p).unwrap()));
    }
    let zeta4 = UnitaryMatrix::scalar(2, CycNum::root_of_unity(4, 1));
    for p in [3u32, 5] {
        out.push((format!("metacyclic({p},4,i)"), make_metacyclic(p, 4, &zeta4).unwrap()));
    }
    for m in 1..=12u32 {
        out.push((format!("twisted_swap({m})"), make_twisted_swap(m).unwrap()));
    }
    let f3 = UnitaryMatrix::fourier(3).unwrap();
    out.push(("fourier(3)".into(), close_group(&[f3], 24).unwrap()));
    out
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let groups = small_groups();
    for (name, g) in &groups {
        ensure(g.order() <= 24, || format!("{name} has order {}", g.order()))?;
        let phi = phi_gamma(g).map_err(|e| format!("{name}: {e}"))?;
        let rep = check_properties(g, &phi).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.all_pass(), || format!("{name}: {rep:?}"))?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} groups in {:?}", groups.len(), start.elapsed()))
}

fn cross_construction() -> Outcome {
    let swap = UnitaryMatrix::swap();
    let zeta4 = UnitaryMatrix::scalar(2, CycNum::root_of_unity(4, 1));
    let mut checked = 0;
    for p in 2..=8u32 {
        let direct = phi_dihedral(p).map_err(|e| e.to_string())?;
        let engine = phi_gamma(&make_dihedral(p).unwrap()).map_err(|e| e.to_string())?;
        ensure(direct == engine, || format!("dihedral p={p}"))?;
        let meta = phi_metacyclic(p, 2, &swap).map_err(|e| e.to_string())?;
        let g = make_metacyclic(p, 2, &swap).unwrap();
        ensure(meta == phi_gamma(&g).map_err(|e| e.to_string())?, || format!("metacyclic swap p={p}"))?;
        checked += 2;
        if p % 2 == 1 {
            let meta = phi_metacyclic(p, 4, &zeta4).map_err(|e| e.to_string())?;
            let g = make_metacyclic(p, 4, &zeta4).unwrap();
            ensure(meta == phi_gamma(&g).map_err(|e| e.to_string())?, || format!("metacyclic i p={p}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} exact term-map equalities"))
}

fn inertia_of(g: &UnitaryGroup) -> Result<Inertia, String> {
    let phi = phi_gamma(g).map_err(|e| e.to_string())?.diagonal();
    let m = coeff_matrix(&phi).map_err(|e| e.to_string())?;
    inertia(&m, PREC).map_err(|e| e.to_string())
}

fn signatures() -> Outcome {
    let cases = [
        ("scalar order 6", make_scalar_cyclic(6, 2).unwrap(), (7, 0, 0)),
        ("Gamma(6,5)", make_gamma_pq(6, 5).unwrap(), (4, 1, 0)),
        ("twisted swap order 6", make_twisted_swap(3).unwrap(), (4, 2, 0)),
    ];
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (name, g, (np, nm, nz)) in &cases {
        let i = inertia_of(g)?;
        notes.push(format!("{name} {i}"));
        if (i.n_plus, i.n_minus, i.n_zero) != (*np, *nm, *nz) {
            failures.push(format!("{name}: got {i}, expected ({np}, {nm}, {nz})"));
        }
    }

    let six = phi_gamma(&make_scalar_cyclic(6, 2).unwrap()).unwrap().diagonal();
    let map = decompose(&six, PREC).map_err(|e| e.to_string())?;
    let sq: Vec<CycNum> = map.plus.iter().map(|c| c.coeff_sq.clone()).collect();
    let want: Vec<CycNum> = [1, 6, 15, 20, 15, 6, 1].iter().map(|&v| CycNum::from_int(v)).collect();
    if sq != want || !map.minus.is_empty() {
        failures.push(format!("(x+y)^6 squared coefficients {:?}", map.render()));
    }

    let g65 = phi_gamma(&make_gamma_pq(6, 5).unwrap()).unwrap().diagonal();
    let map = decompose(&g65, PREC).map_err(|e| e.to_string())?;
    // monomial, squared coefficient, sign
    let want = [
        (vec![6, 0], 1, 1),
        (vec![0, 6], 1, 1),
        (vec![1, 1], 6, 1),
        (vec![3, 3], 2, 1),
        (vec![2, 2], 9, -1),
    ];
    for (e, c, sign) in &want {
        let side = if *sign > 0 { &map.plus } else { &map.minus };
        let hit = side.iter().any(|m| m.as_monomial() == Some(e) && m.coeff_sq == CycNum::from_int(*c));
        if !hit {
            failures.push(format!("Gamma(6,5) component {e:?} with square {c} and sign {sign}"));
        }
    }
    if map.signature() != (4, 1) {
        failures.push(format!("Gamma(6,5) map signature {:?}", map.signature()));
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

fn primality() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for p in 3..=50u32 {
        for q in [2, 3, p - 1] {
            if q >= p {
                continue;
            }
            let v = prime_test(p, q).map_err(|e| e.to_string())?;
            ensure(v.congruent == is_prime(p as u64), || format!("p={p} q={q}: {v:?}"))?;
            count += 1;
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{count} (p, q) pairs agree with trial division in {:?}", start.elapsed()))
}

fn recurrence() -> Outcome {
    for p in 3..=40u32 {
        let a = fp2_recurrence(p).map_err(|e| e.to_string())?;
        let b = fpq_compute(p, 2).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("p={p}: {a} vs {b}"))?;
    }
    Ok("3 <= p <= 40".into())
}

fn golden() -> Outcome {
    // the gap at p = 200 is far below 2^-128, so certify at higher precision
    let prec = 1024;
    let g100 = golden_ratio_scalar(100, prec).map_err(|e| e.to_string())?;
    let g200 = golden_ratio_scalar(200, prec).map_err(|e| e.to_string())?;
    let tol = BigRational::new(1.into(), 100.into());
    ensure(g200.gap_interval.hi() <= tol, || format!("gap at 200 is {}", g200.gap))?;
    ensure(g200.gap_interval.hi() < g100.gap_interval.lo(), || {
        format!("gap at 200 ({}) not below gap at 100 ({})", g200.gap, g100.gap)
    })?;
    Ok(format!("gap(100) = {}, gap(200) = {}", g100.gap, g200.gap))
}

fn ratios() -> Outcome {
    let rows = signature_ratio(Family::GammaP1, 2..=60, PREC).map_err(|e| e.to_string())?;
    for row in &rows {
        ensure(row.ratio_value() == Some(BigRational::one()), || format!("Gamma({},1): {:?}", row.p, row.inertia))?;
    }
    let rows = signature_ratio(Family::GammaPPm1, 3..=60, PREC).map_err(|e| e.to_string())?;
    let half = BigRational::new(1.into(), 2.into());
    let mut last_gap: [Option<BigRational>; 4] = Default::default();
    for row in &rows {
        let p = row.p;
        let want = pm1_expected_counts(p);
        let i = row.inertia;
        ensure((i.n_plus, i.n_minus) == want, || format!("Gamma({p},{}): {i}, rule gives {want:?}", p - 1))?;
        let gap = (row.ratio_value().unwrap() - &half).abs();
        let bound = BigRational::new(6.into(), p.into());
        ensure(gap <= bound, || format!("p={p}: |R_p - 1/2| = {gap} > 3/(p/2)"))?;
        let slot = &mut last_gap[(p % 4) as usize];
        if let Some(prev) = slot.as_ref() {
            ensure(&gap < prev, || format!("p={p}: |R_p - 1/2| = {gap} not below {prev}"))?;
        }
        *slot = Some(gap);
    }
    Ok("R_p = 1 for Gamma(p,1), p <= 60; mod 4 counts for Gamma(p,p-1), 3 <= p <= 60".into())
}

fn structure() -> Outcome {
    for p in 3..=60 {
        fp_pm1_structure(p).map_err(|e| format!("p={p}: {e}"))?;
    }
    Ok("3 <= p <= 60".into())
}

fn quadmaps() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for p in 1..=4u32 {
        let g = build_gp(p).map_err(|e| e.to_string())?;
        let k = 2 * p as usize + 1;
        ensure(g.minus.len() == k, || format!("p={p}: {} negative components", g.minus.len()))?;
        ensure(g.degree() == 2 * p, || format!("p={p}: degree {}", g.degree()))?;
        ensure(is_nondegenerate(&g), || format!("p={p}: degenerate components"))?;
        let rep = verify_quadmap(&g, (2, k)).map_err(|e| e.to_string())?;
        ensure(rep.verified, || format!("p={p}: remainder {}", rep.remainder))?;
        counts.push(format!("N({p})={}", g.plus.len()));
    }
    let w = build_w(1).map_err(|e| e.to_string())?;
    ensure(w.positive_count() == 8, || format!("N(1) = {}", w.positive_count()))?;
    let g = build_gp(1).unwrap();
    let mut got: Vec<(Vec<u32>, BigRational, bool)> = g
        .plus
        .iter()
        .map(|c| (c.as_monomial().unwrap().clone(), c.coeff_sq.to_rational().unwrap(), true))
        .chain(g.minus.iter().map(|c| (c.as_monomial().unwrap().clone(), c.coeff_sq.to_rational().unwrap(), false)))
        .collect();
    // z1^2, z2^2, z3^2, c z1z2, c z1z3, c z2z3, c z4, c z5; z4^2, c z4z5, z5^2 with c^2 = 2
    let mono = |v: [u32; 5]| v.to_vec();
    let mut want = vec![
        (mono([2, 0, 0, 0, 0]), r(1), true),
        (mono([0, 2, 0, 0, 0]), r(1), true),
        (mono([0, 0, 2, 0, 0]), r(1), true),
        (mono([1, 1, 0, 0, 0]), r(2), true),
        (mono([1, 0, 1, 0, 0]), r(2), true),
        (mono([0, 1, 1, 0, 0]), r(2), true),
        (mono([0, 0, 0, 1, 0]), r(2), true),
        (mono([0, 0, 0, 0, 1]), r(2), true),
        (mono([0, 0, 0, 2, 0]), r(1), false),
        (mono([0, 0, 0, 1, 1]), r(2), false),
        (mono([0, 0, 0, 0, 2]), r(1), false),
    ];
    got.sort();
    want.sort();
    ensure(got == want, || "p=1 map differs from the worked example".into())?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} in {:?}", counts.join(", "), start.elapsed()))
}

fn soundness() -> Outcome {
    let mut probes = 0;
    // invariant polynomials: every coefficient
    for g in [make_gamma_pq(6, 5).unwrap(), make_twisted_swap(3).unwrap(), make_dihedral(3).unwrap()] {
        let phi = phi_gamma(&g).unwrap();
        for i in 0..phi.len() {
            let bad = perturb(&phi, i, &CycNum::one(1));
            let rep = check_properties(&g, &bad).map_err(|e| e.to_string())?;
            ensure(!rep.all_pass(), || format!("perturbed coefficient {i} of Phi still passes"))?;
            probes += 1;
        }
    }
    // f_{p,q} coefficients: line identity and prime congruence
    let f = fpq_compute(7, 6).unwrap();
    for (e, _) in f.terms() {
        let bad = f.add(&MomentPoly::monomial(2, e.clone(), r(1))).unwrap();
        ensure(!line_remainder(&bad).unwrap().is_zero(), || format!("f_7,6 perturbed at {e:?} still 1 on the line"))?;
        if e[0] > 0 && e[1] > 0 {
            ensure(!prime_test_poly(&bad, 7, 6).congruent, || format!("perturbed f_7,6 at {e:?} still congruent"))?;
        }
        probes += 1;
    }
    // decompositions: every squared coefficient
    let p = phi_gamma(&make_twisted_swap(3).unwrap()).unwrap().diagonal();
    let map = decompose(&p, PREC).map_err(|e| e.to_string())?;
    let n = map.plus.len() + map.minus.len();
    for i in 0..n {
        let bad = perturb_component(&map, i, &BigRational::new(1.into(), 7.into())).unwrap();
        ensure(bad.norm_difference() != p, || format!("decomposition component {i} perturbation undetected"))?;
        probes += 1;
    }
    // quadric maps: every component
    for k in 1..=2u32 {
        let g = build_gp(k).unwrap();
        for i in 0..g.plus.len() + g.minus.len() {
            let bad = perturb_component(&g, i, &BigRational::new(1.into(), 3.into())).unwrap();
            let rep = verify_quadmap(&bad, (2, 2 * k as usize + 1)).map_err(|e| e.to_string())?;
            ensure(!rep.verified, || format!("g_{k} component {i} perturbation verified"))?;
            probes += 1;
        }
    }
    // a Hermitian form that is not 1 on the sphere must keep a remainder
    let near = HermPoly::inner_product(2).scale(&CycNum::from_rational(&BigRational::new(3.into(), 2.into())));
    let rem = near.diagonal().sub(&HermPoly::one(2, Form::Diagonal)).unwrap().reduce_sphere();
    ensure(!rem.is_zero(), || "scaled inner product reduced to zero".into())?;
    Ok(format!("{probes} single-coefficient probes all detected"))
}

#[test]
fn acceptance_suite() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("golden fixtures", fixtures),
        ("invariant properties for |G| <= 24", property_suite),
        ("cross-construction equality", cross_construction),
        ("signatures and decompositions", signatures),
        ("primality congruence", primality),
        ("f_{p,2} closed form", recurrence),
        ("golden-ratio limit", golden),
        ("signature ratios", ratios),
        ("f_{p,p-1} sign structure", structure),
        ("quadric maps g_p", quadmaps),
        ("soundness probes", soundness),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let line = match &outcome {
            Ok(detail) => format!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", k + 1),
            Err(why) => {
                failed.push(k + 1);
                format!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", k + 1)
            }
        };
        writeln!(out, "{line}").unwrap();
        out.flush().unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
