//! Throughput of the cipher Monte Carlo, parallel dispatch versus the
//! sequential reference path. Both produce bitwise-identical results; the
//! interesting number is the speedup on multi-core hosts.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use qlink_core::enigma::{
    bob_ber_monte_carlo_with, eve_ber_monte_carlo_with, round_trip_with, CipherConfig, Execution,
};

fn config() -> CipherConfig {
    CipherConfig {
        mean_photon_number: 2.25,
        num_bases: 256,
        ..CipherConfig::default()
    }
}

fn bench_eve(c: &mut Criterion) {
    let cfg = config();
    let mut group = c.benchmark_group("eve_ber");
    for &trials in &[100_000u64, 1_000_000] {
        group.throughput(Throughput::Elements(trials));
        group.bench_with_input(BenchmarkId::new("parallel", trials), &trials, |b, &n| {
            b.iter(|| eve_ber_monte_carlo_with(&cfg, n, Execution::Auto).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", trials), &trials, |b, &n| {
            b.iter(|| eve_ber_monte_carlo_with(&cfg, n, Execution::Sequential).unwrap())
        });
    }
    group.finish();
}

fn bench_bob(c: &mut Criterion) {
    let cfg = config();
    let mut group = c.benchmark_group("bob_ber");
    for &trials in &[100_000u64, 1_000_000] {
        group.throughput(Throughput::Elements(trials));
        group.bench_with_input(BenchmarkId::new("parallel", trials), &trials, |b, &n| {
            b.iter(|| bob_ber_monte_carlo_with(&cfg, n, Execution::Auto).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", trials), &trials, |b, &n| {
            b.iter(|| bob_ber_monte_carlo_with(&cfg, n, Execution::Sequential).unwrap())
        });
    }
    group.finish();
}

fn bench_round_trip(c: &mut Criterion) {
    let cfg = CipherConfig {
        mean_photon_number: 9.0,
        ..CipherConfig::default()
    };
    let mut group = c.benchmark_group("round_trip");
    let symbols = 1_000_000u64;
    group.throughput(Throughput::Elements(symbols));
    group.bench_function("parallel", |b| {
        b.iter(|| round_trip_with(&cfg, symbols, Execution::Auto).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| round_trip_with(&cfg, symbols, Execution::Sequential).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_eve, bench_bob, bench_round_trip);
criterion_main!(benches);
