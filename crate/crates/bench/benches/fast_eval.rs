use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use nstep_core::fast_eval::{matrix_power_oracle, naive_term, term_at, Exact, Modular};
use nstep_core::SequenceSpec;

const M61: u64 = (1 << 61) - 1;

fn modular(c: &mut Criterion) {
    let ring = Modular::new(M61).unwrap();
    let spec = SequenceSpec::fibonacci(10).unwrap();
    let mut g = c.benchmark_group("mod-2^61-1/n=10");
    for r in [1_000i64, 1_000_000, 1_000_000_000_000_000_000] {
        g.bench_with_input(BenchmarkId::new("doubling", r), &r, |b, &r| b.iter(|| term_at(&spec, black_box(r), &ring)));
        g.bench_with_input(BenchmarkId::new("matrix", r), &r, |b, &r| {
            b.iter(|| matrix_power_oracle(&spec, black_box(r), &ring))
        });
        if r <= 1_000_000 {
            g.bench_with_input(BenchmarkId::new("naive", r), &r, |b, &r| {
                b.iter(|| naive_term(&spec, black_box(r), &ring))
            });
        }
    }
    g.finish();
}

fn exact(c: &mut Criterion) {
    let spec = SequenceSpec::lucas(3).unwrap();
    let mut g = c.benchmark_group("exact/n=3");
    for r in [-5_000i64, 5_000, 50_000] {
        g.bench_with_input(BenchmarkId::new("doubling", r), &r, |b, &r| {
            b.iter(|| term_at(&spec, black_box(r), &Exact))
        });
        g.bench_with_input(BenchmarkId::new("matrix", r), &r, |b, &r| {
            b.iter(|| matrix_power_oracle(&spec, black_box(r), &Exact))
        });
        g.bench_with_input(BenchmarkId::new("naive", r), &r, |b, &r| {
            b.iter(|| naive_term(&spec, black_box(r), &Exact))
        });
    }
    g.finish();
}

criterion_group!(benches, modular, exact);
criterion_main!(benches);
