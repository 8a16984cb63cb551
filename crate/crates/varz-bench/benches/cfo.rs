use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use varz_core::benchmarks::lookup;
use varz_core::cfo::{compute_accelerations, run_single, sweep, CfoParams, DecisionSpace};
use varz_core::quasirandom::halton_ipd;

fn space_of(name: &str) -> (varz_core::benchmarks::BenchmarkSpec, DecisionSpace) {
    let spec = lookup(name).unwrap();
    let space = DecisionSpace::from_pairs(&spec.bounds).unwrap();
    (spec, space)
}

fn accelerations(c: &mut Criterion) {
    let params = CfoParams::default();
    for nd in [2usize, 10, 30] {
        let space = DecisionSpace::from_pairs(&vec![(-100.0, 100.0); nd]).unwrap();
        let positions = halton_ipd(&space, 8, 0.5).unwrap();
        let fitness: Vec<f64> = positions.iter().map(|x| -x.iter().map(|v| v * v).sum::<f64>()).collect();
        c.bench_function(&format!("accelerations nd={nd} np={}", positions.len()), |b| {
            b.iter(|| compute_accelerations(black_box(&positions), black_box(&fitness), &params))
        });
    }
}

fn single_run(c: &mut Criterion) {
    let params = CfoParams::default();
    let (spec, space) = space_of("GP");
    c.bench_function("run_single GP np/nd=8 gamma=0.5", |b| {
        b.iter(|| {
            let mut s = space.clone();
            run_single(&spec, &mut s, 8, black_box(0.5), &params).unwrap()
        })
    });
}

fn full_sweep(c: &mut Criterion) {
    let params = CfoParams::default();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for name in ["SPHERE", "GP"] {
        let (spec, space) = space_of(name);
        group.bench_function(name, |b| b.iter(|| sweep(&spec, black_box(&space), &params).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, accelerations, single_run, full_sweep);
criterion_main!(benches);
