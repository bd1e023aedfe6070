use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trigon::complex::check_generalized_m_gon;
use trigon::{
    analyze, build_euclidean, build_hyperbolic, build_pg2, enumerate_triples, search_bijection,
    tower_for_order, trace_bijection, validate_plane, validate_word, verify_presentation,
    SearchConfig,
};
use trigon_bench::{certified, with_triples};

fn planes(c: &mut Criterion) {
    let mut g = c.benchmark_group("plane");
    for q in [4u32, 8, 9] {
        let tower = tower_for_order(q).unwrap();
        g.bench_with_input(BenchmarkId::new("build_pg2", q), &tower, |b, t| {
            b.iter(|| build_pg2(black_box(t)))
        });
        let plane = build_pg2(&tower);
        g.bench_with_input(BenchmarkId::new("validate", q), &plane, |b, p| {
            b.iter(|| validate_plane(black_box(p)))
        });
        let graph = plane.incidence_graph().graph;
        g.bench_with_input(BenchmarkId::new("gen_gon", q), &graph, |b, g| {
            b.iter(|| check_generalized_m_gon(black_box(g)))
        });
    }
    g.finish();
}

fn bijections(c: &mut Criterion) {
    let mut g = c.benchmark_group("bijection");
    for q in [4u32, 8] {
        let tower = tower_for_order(q).unwrap();
        let plane = build_pg2(&tower);
        g.bench_with_input(BenchmarkId::new("trace_certified", q), &plane, |b, p| {
            b.iter(|| trace_bijection(&tower, black_box(p)).unwrap())
        });
    }
    let plane = build_pg2(&tower_for_order(3).unwrap());
    for jobs in [1usize, 4] {
        g.bench_with_input(
            BenchmarkId::new("search_q3_jobs", jobs),
            &jobs,
            |b, &jobs| {
                b.iter(|| {
                    search_bijection(black_box(&plane), SearchConfig { budget: None, jobs })
                        .unwrap()
                })
            },
        );
    }
    g.finish();
}

fn complexes(c: &mut Criterion) {
    let mut g = c.benchmark_group("complex");
    for q in [2u32, 4] {
        let (plane, bij) = certified(q);
        g.bench_with_input(BenchmarkId::new("triples", q), &q, |b, _| {
            b.iter(|| enumerate_triples(black_box(&plane), &bij).unwrap())
        });
        let (plane, bij, triples) = with_triples(q);
        let p = build_euclidean(&plane, &bij, &triples).unwrap();
        g.bench_with_input(BenchmarkId::new("verify_triangle", q), &p, |b, p| {
            b.iter(|| verify_presentation(black_box(p)))
        });
        g.bench_with_input(BenchmarkId::new("analyze_triangle", q), &p, |b, p| {
            b.iter(|| analyze(black_box(p), &plane, &bij).unwrap())
        });
    }
    let (plane, bij, triples) = with_triples(2);
    let w = validate_word("abcbcab").unwrap();
    g.bench_function("analyze_abcbcab_q2", |b| {
        b.iter(|| {
            let p = build_hyperbolic(&plane, &bij, &triples, black_box(&w)).unwrap();
            analyze(&p, &plane, &bij).unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, planes, bijections, complexes);
criterion_main!(benches);
