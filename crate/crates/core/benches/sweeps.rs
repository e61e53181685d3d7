use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use two_inner_core::axioms::axiom_suite_with;
use two_inner_core::integral::{synchronous, two_inner_phi_with, QuadratureGrid, SyncOptions, WeightedTriple};
use two_inner_core::sweep::{conditional_sweep, Draw, Induced, SweepConfig};
use two_inner_core::{Execution, FieldTag, SeededGenerator, Tolerance, TwoInnerEvaluator};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axiom_suite");
    let ev = TwoInnerEvaluator::unit(8, FieldTag::Complex).unwrap();
    let gen = SeededGenerator::new(7);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, 2000), |b| {
            b.iter(|| axiom_suite_with(&ev, &gen, 2000, Tolerance::DEFAULT, exec).unwrap())
        });
    }
    group.finish();
}

fn conditional(c: &mut Criterion) {
    let mut group = c.benchmark_group("conditional_sweep");
    for (name, exec) in MODES {
        let mut cfg = SweepConfig::new(7, 2000, vec![4], vec![FieldTag::Complex]).unwrap();
        cfg.exec = exec;
        group.bench_function(BenchmarkId::new(name, 2000), |b| {
            b.iter(|| conditional_sweep(&cfg, &Induced, Draw::Targeted).unwrap())
        });
    }
    group.finish();
}

fn grid_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("grid");
    group.sample_size(20);
    for n in [513, 2049] {
        let grid = QuadratureGrid::simpson(1.0, 2.0, n).unwrap();
        let t = WeightedTriple::sample(&grid, |s| s * s, |s| s.sin(), |s| 1.0 + s, |s| s.sqrt()).unwrap();
        let q = grid.sample(|s| s);
        let p = grid.sample(|s| s.exp());
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(format!("double_sum/{name}"), n), &n, |b, _| {
                b.iter(|| two_inner_phi_with(&t, &grid, exec).unwrap())
            });
            let opts = SyncOptions {
                exec,
                ..SyncOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(format!("synchronous/{name}"), n), &n, |b, _| {
                b.iter(|| synchronous(&q, &p, &grid, &t.phi, opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, axioms, conditional, grid_kernels);
criterion_main!(benches);
