//! Parallel against sequential execution of the verify sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use raygroup::par::Execution;
use raygroup::verify::{verify_suite, Size, VerifyConfig};

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for suite in ["rr", "reciprocity", "classgroup", "conductor"] {
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            let cfg = VerifyConfig { seed: 1, size: Size::Small, exec, ..VerifyConfig::default() };
            group.bench_with_input(BenchmarkId::new(suite, label), &cfg, |b, cfg| {
                b.iter(|| {
                    let r = verify_suite(suite, cfg).unwrap();
                    assert!(r.passed);
                    r.checks
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
