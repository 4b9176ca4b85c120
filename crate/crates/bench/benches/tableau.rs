use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fuzzy2d_bench::{big_squares, corpus, small_squares, Query};
use fuzzy2d_core::{prove_valid, LogicId, Mode, ProverConfig};

fn run(q: &Query, cfg: &ProverConfig) -> bool {
    prove_valid(&q.formula, &q.filter, q.logic, cfg).unwrap().is_valid()
}

fn small(c: &mut Criterion) {
    let mut g = c.benchmark_group("small-squares");
    g.sample_size(10);
    for mode in [Mode::Branching, Mode::Linear] {
        let cfg = ProverConfig {
            mode,
            ..ProverConfig::default()
        };
        for q in small_squares() {
            g.bench_with_input(BenchmarkId::new(format!("{mode:?}"), &q.name), &q, |b, q| {
                b.iter(|| black_box(run(q, &cfg)))
            });
        }
    }
    g.finish();
}

fn big(c: &mut Criterion) {
    let mut g = c.benchmark_group("big-squares");
    g.sample_size(10);
    let cfg = ProverConfig::default();
    for q in big_squares() {
        g.bench_with_input(BenchmarkId::from_parameter(&q.name), &q, |b, q| b.iter(|| black_box(run(q, &cfg))));
    }
    g.finish();
}

fn corpora(c: &mut Criterion) {
    let mut g = c.benchmark_group("corpus");
    g.sample_size(10);
    let cfg = ProverConfig::default();
    for logic in LogicId::ALL {
        let qs = corpus(logic, 25);
        g.bench_function(logic.name(), |b| b.iter(|| qs.iter().filter(|q| run(q, &cfg)).count()));
    }
    g.finish();
}

criterion_group!(benches, small, big, corpora);
criterion_main!(benches);
