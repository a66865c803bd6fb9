use std::hint::black_box;
use std::time::Duration;

use cellbound_bench::family_problem;
use cellbound_core::certify::{check_primitive, DEFAULT_SEARCH_CEILING};
use cellbound_core::constructions::{f_n, gamma_n, u_n};
use cellbound_core::ip::{ip_bound_by_enumeration, solve_ip, DEFAULT_NODE_LIMIT};
use cellbound_core::lp::{solve_lp, Sense};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn lp(c: &mut Criterion) {
    let mut group = c.benchmark_group("lp_min");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(15));
    for n in [6, 8, 10] {
        let p = family_problem(n, Sense::Minimize);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| solve_lp(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn branch_and_bound(c: &mut Criterion) {
    let mut group = c.benchmark_group("bb_min_warm");
    group.sample_size(10);
    for n in [5, 6] {
        let p = family_problem(n, Sense::Minimize);
        let u = u_n(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| solve_ip(black_box(p), Some(&u), DEFAULT_NODE_LIMIT).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("fiber_min");
    for n in [6, 8] {
        let p = family_problem(n, Sense::Minimize);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| {
                ip_bound_by_enumeration(p.model(), p.margins(), p.target(), p.sense(), 1_000_000)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn primitivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("primitivity");
    group.sample_size(10);
    for n in [5, 6] {
        let (g, f) = (gamma_n(n).unwrap(), f_n(n).unwrap());
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| check_primitive(&g, black_box(&f), DEFAULT_SEARCH_CEILING).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, lp, branch_and_bound, enumeration, primitivity);
criterion_main!(benches);
