use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use idemspec::enumerate::{enumerate_posets, enumerate_semirings};
use idemspec::verify::{verify, Suite, VerifyInput};
use idemspec::Execution;

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new("posets", name), &exec, |b, &e| {
            b.iter(|| enumerate_posets(black_box(5), e).unwrap().len())
        });
        g.bench_with_input(BenchmarkId::new("semirings", name), &exec, |b, &e| {
            b.iter(|| enumerate_semirings(black_box(4), e).unwrap().len())
        });
    }
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        let input = VerifyInput {
            bound: 4,
            exec,
            ..VerifyInput::default()
        };
        for suite in [Suite::Duality, Suite::Adjunction] {
            g.bench_with_input(BenchmarkId::new(suite.name(), name), &input, |b, i| {
                b.iter(|| verify(suite, i).unwrap().passed)
            });
        }
    }
    g.finish();
}

criterion_group!(benches, enumeration, sweeps);
criterion_main!(benches);
