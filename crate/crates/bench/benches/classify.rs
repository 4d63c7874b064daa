use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use slocckit::catalog::named;
use slocckit::classifier::classify_with;
use slocckit::config::{ExactMode, RunConfig};
use slocckit::fuzz::{invariance_trial, random_gaussian_state};
use slocckit::partitions::{enumerate_sjnf_types, eta};

fn classify_four_qubits(c: &mut Criterion) {
    let exact = RunConfig::default();
    let float = RunConfig { exact_mode: ExactMode::ForceFloat, ..RunConfig::default() };
    let mut group = c.benchmark_group("classify_4q");
    for name in ["GHZ(4)", "W(4)", "Cluster", "Upsilon4"] {
        let state = named(name).unwrap();
        group.bench_with_input(BenchmarkId::new("exact", name), &state, |b, s| {
            b.iter(|| classify_with(black_box(s), None, &exact).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("float", name), &state, |b, s| {
            b.iter(|| classify_with(black_box(s), None, &float).unwrap())
        });
    }
    group.finish();
}

fn classify_eight_qubits(c: &mut Criterion) {
    let config = RunConfig::default();
    let mut group = c.benchmark_group("classify_8q");
    group.sample_size(10);
    let ghz = named("GHZ(8)").unwrap();
    group.bench_function("GHZ(8)", |b| b.iter(|| classify_with(black_box(&ghz), None, &config).unwrap()));
    let random = random_gaussian_state(8, 7);
    group.bench_function("random", |b| b.iter(|| classify_with(black_box(&random), None, &config).unwrap()));
    group.finish();
}

fn invariance(c: &mut Criterion) {
    let config = RunConfig::default();
    let state = named("Upsilon4").unwrap();
    let mut seed = 0u64;
    c.bench_function("invariance_trial_upsilon4", |b| {
        b.iter(|| {
            seed += 1;
            invariance_trial(black_box(&state), seed, &config).unwrap()
        })
    });
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_sjnf_types_n1", |b| b.iter(|| enumerate_sjnf_types(black_box(1))));
    c.bench_function("eta_n2", |b| b.iter(|| eta(black_box(2))));
}

criterion_group!(benches, classify_four_qubits, classify_eight_qubits, invariance, enumeration);
criterion_main!(benches);
