use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nok_core::par::Exec;
use nok_core::verify::{run_suite, VerifyOptions};

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (suite, samples) in [("cone-body", 120), ("blaschke-2d", 40), ("mthm", 4)] {
        for exec in [Exec::Parallel, Exec::Sequential] {
            let opts = VerifyOptions {
                samples: Some(samples),
                exec,
                ..VerifyOptions::default()
            };
            let id = BenchmarkId::new(suite, format!("{exec:?}").to_lowercase());
            group.bench_with_input(id, &opts, |b, opts| {
                b.iter(|| run_suite(suite, opts).expect("suite runs"));
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
