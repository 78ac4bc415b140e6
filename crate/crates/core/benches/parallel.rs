use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use pt_solvable::contour::{AnyContour, ArchContour, ShiftedLine};
use pt_solvable::numeric::{
    build_hamiltonian_with, solve_targeted, verify_family, FamilyParams, Grid, TargetedOptions, VerifyConfig,
};
use pt_solvable::par::Execution;
use pt_solvable::potentials::{HulthenParams, PoschlTellerParams};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn hamiltonian(c: &mut Criterion) {
    let p = HulthenParams::new(2.0, 2.0).unwrap();
    let arch = ArchContour::new(std::f64::consts::PI / 6.0).unwrap();
    let grid = Grid::new(-12.0, 12.0, 24001).unwrap();
    let mut group = c.benchmark_group("build_hamiltonian");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| build_hamiltonian_with(black_box(&p), &arch, &grid, exec).unwrap())
        });
    }
    group.finish();
}

fn targeted(c: &mut Criterion) {
    let p = PoschlTellerParams::new(7.5, 1.5, 0.3).unwrap();
    let line = ShiftedLine::new(0.3).unwrap();
    let grid = Grid::new(-12.0, 12.0, 12001).unwrap();
    let h = build_hamiltonian_with(&p, &line, &grid, Execution::Sequential).unwrap();
    // the seven bound states of α = 7.5, β = 1.5
    let targets: Vec<Complex64> = [-64.0, -36.0, -25.0, -16.0, -9.0, -4.0, -1.0]
        .iter()
        .map(|&e| Complex64::new(e, 0.0))
        .collect();
    let mut group = c.benchmark_group("solve_targeted");
    for (name, exec) in MODES {
        let opts = TargetedOptions {
            exec,
            ..Default::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| solve_targeted(black_box(&h), &targets, &opts))
        });
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let fam = FamilyParams::PoschlTeller(PoschlTellerParams::new(3.5, 1.5, 0.3).unwrap());
    let line = AnyContour::Line(ShiftedLine::new(0.3).unwrap());
    let grid = Grid::new(-12.0, 12.0, 3001).unwrap();
    let mut group = c.benchmark_group("verify_family");
    group.sample_size(20);
    for (name, exec) in MODES {
        let mut cfg = VerifyConfig::default();
        cfg.solver.exec = exec;
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_family(black_box(&fam), &line, &grid, &cfg))
        });
    }
    group.finish();
}

criterion_group!(benches, hamiltonian, targeted, verify);
criterion_main!(benches);
