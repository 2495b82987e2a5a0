use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::BigRational;
use std::sync::Arc;

use cherednik_core::cherednik::AlgebraContext;
use cherednik_core::coinv::Coinvariants;
use cherednik_core::exactfield::ParameterSet;
use cherednik_core::exec::Execution;
use cherednik_core::jack::JackEngine;
use cherednik_core::verify;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn commutativity(c: &mut Criterion) {
    let ctx = AlgebraContext::generic(3, 1, 3, BigRational::from_integer(1.into())).unwrap();
    let mut group = c.benchmark_group("dunkl_commutativity_g313_deg4");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify::dunkl_commutativity(&ctx, 4, mode).unwrap())
        });
    }
    group.finish();
}

fn action_lemma(c: &mut Criterion) {
    let ctx = Arc::new(AlgebraContext::generic(3, 1, 3, BigRational::from_integer(1.into())).unwrap());
    let mut group = c.benchmark_group("action_lemma_g313_deg3");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            // a fresh engine each time so the memo table starts empty
            b.iter(|| verify::action_lemma(&JackEngine::new(ctx.clone()), 3, mode).unwrap())
        });
    }
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decomposition_g333");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let coinv = Coinvariants::new(ParameterSet::generic(3, 3).unwrap(), 3, mode).unwrap();
                coinv.verify_decomposition().unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, commutativity, action_lemma, decomposition);
criterion_main!(benches);
