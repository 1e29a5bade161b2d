use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use crinv_core::fpq::{fp2_recurrence, fpq_compute, prime_test};
use crinv_core::groups::{make_dihedral, make_gamma_pq, make_twisted_swap};
use crinv_core::invariant::{phi_gamma, phi_gamma_direct};
use crinv_core::quadmap::{build_gp, verify_quadmap};
use crinv_core::signature::{decompose, inertia, CoeffMatrix};

fn expansion(c: &mut Criterion) {
    let g = make_gamma_pq(12, 5).unwrap();
    c.bench_function("phi_gamma gamma(12,5)", |b| b.iter(|| phi_gamma(black_box(&g)).unwrap()));
    c.bench_function("phi_gamma_direct gamma(12,5)", |b| b.iter(|| phi_gamma_direct(black_box(&g)).unwrap()));
    let d = make_dihedral(6).unwrap();
    c.bench_function("phi_gamma dihedral(6)", |b| b.iter(|| phi_gamma(black_box(&d)).unwrap()));
}

fn family(c: &mut Criterion) {
    c.bench_function("fpq_compute(40,39)", |b| b.iter(|| fpq_compute(black_box(40), 39).unwrap()));
    c.bench_function("fp2_recurrence(200)", |b| b.iter(|| fp2_recurrence(black_box(200)).unwrap()));
    c.bench_function("prime_test(47,46)", |b| b.iter(|| prime_test(black_box(47), 46).unwrap()));
}

fn signatures(c: &mut Criterion) {
    let phi = phi_gamma(&make_twisted_swap(3).unwrap()).unwrap().diagonal();
    let m = CoeffMatrix::from_poly(&phi).unwrap();
    c.bench_function("inertia twisted swap order 6", |b| b.iter(|| inertia(black_box(&m), 128).unwrap()));
    c.bench_function("decompose twisted swap order 6", |b| b.iter(|| decompose(black_box(&phi), 128).unwrap()));
}

fn quadmaps(c: &mut Criterion) {
    c.bench_function("build_gp(2) + verify", |b| {
        b.iter(|| {
            let g = build_gp(black_box(2)).unwrap();
            verify_quadmap(&g, (2, 5)).unwrap()
        })
    });
}

criterion_group!(benches, expansion, family, signatures, quadmaps);
criterion_main!(benches);
