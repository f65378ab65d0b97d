use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use memkick_bench::setup;
use memkick_core::fastsum::{trajectory_sums, SumStrategy, WeightChannel};

fn bench_trajectory_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("trajectory_sums");
    for &n in &[1024usize, 4096, 16384] {
        let (table, series) = setup(0.5, n);
        for strategy in [
            SumStrategy::Direct,
            SumStrategy::DirectCompensated,
            SumStrategy::ChunkedConvolution,
            SumStrategy::Truncated { window: n / 8 },
        ] {
            group.bench_with_input(
                BenchmarkId::new(strategy.to_string(), n),
                &n,
                |b, &n| {
                    b.iter(|| {
                        trajectory_sums(&table, WeightChannel::Power, &series, n, strategy)
                            .unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

criterion_group!(benches, bench_trajectory_sums);
criterion_main!(benches);
