use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gugp_bench::{nwa_instance, pwt_instance, repeated_complete, tsp_instance};
use gugp_core::reduce::{pwt1_gadget, tsp_to_min_nwa, RepeatCaps};
use gugp_core::verify::{check_bundle_exactly_one, check_strip_bounds, DEFAULT_CHECK_CAP};
use gugp_core::{brute_force, local_search_half, LocalSearchOptions, Objective};

fn brute(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    for (n, k) in [(6, 3), (8, 3), (8, 4)] {
        let g = pwt_instance(n, k, 16, 1);
        group.bench_with_input(
            BenchmarkId::new("max_pwt", format!("n{n}_k{k}")),
            &g,
            |b, g| b.iter(|| brute_force(black_box(g), Objective::MaxPwt, 1 << 22).unwrap()),
        );
    }
    let (g, _) = tsp_to_min_nwa(&tsp_instance(6, 2)).unwrap();
    group.bench_function("tsp_n6", |b| {
        b.iter(|| brute_force(black_box(&g), Objective::MinNwa, 1 << 22).unwrap())
    });
    group.finish();
}

fn local(c: &mut Criterion) {
    let mut group = c.benchmark_group("local_search_half");
    for n in [8, 32, 128] {
        let g = nwa_instance(n, 4, 4 * n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| local_search_half(black_box(g), &LocalSearchOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn gadgets(c: &mut Criterion) {
    let mut group = c.benchmark_group("gadgets");
    let rep = repeated_complete(3, 2);
    group.bench_function("pwt1_k3_l2", |b| {
        b.iter(|| pwt1_gadget(black_box(&rep), &RepeatCaps::default()).unwrap())
    });
    let (g, bundles) = pwt1_gadget(&rep, &RepeatCaps::default()).unwrap();
    group.bench_function("exactly_one_k3_l2", |b| {
        b.iter(|| check_bundle_exactly_one(black_box(&g), &bundles, DEFAULT_CHECK_CAP).unwrap())
    });
    let mixed = pwt_instance(6, 3, 10, 4);
    group.bench_function("strip_bounds_n6_k3", |b| {
        b.iter(|| check_strip_bounds(black_box(&mixed), DEFAULT_CHECK_CAP).unwrap())
    });
    group.finish();
}

criterion_group!(benches, brute, local, gadgets);
criterion_main!(benches);
