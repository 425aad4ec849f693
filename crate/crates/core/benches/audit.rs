use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use qsv_core::audit::{batch_map, run_law_audit, Execution};
use qsv_core::hilbert::expectation;
use qsv_core::sampling::{random_projector, random_state, seeded_rng};
use qsv_core::Settings;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn law_audit(c: &mut Criterion) {
    let s = Settings::default();
    let mut group = c.benchmark_group("law_audit");
    group.sample_size(10);
    for trials in [100, 1000] {
        group.throughput(Throughput::Elements(3 * trials as u64));
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, trials), &trials, |b, &n| {
                b.iter(|| run_law_audit(black_box(&[2, 3, 4]), n, 0x5eed, &s, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn born_degrees(c: &mut Criterion) {
    let s = Settings::default();
    let mut group = c.benchmark_group("born_degrees");
    for dim in [4, 16] {
        let n = 2000;
        group.throughput(Throughput::Elements(n as u64));
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, dim), &dim, |b, &d| {
                b.iter(|| {
                    batch_map(n, exec, |i| {
                        let mut rng = seeded_rng(1, i as u64);
                        let p = random_projector(d, &mut rng, &s)?;
                        expectation(&random_state(d, &mut rng, &s)?, &p)
                    })
                    .unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, law_audit, born_degrees);
criterion_main!(benches);
