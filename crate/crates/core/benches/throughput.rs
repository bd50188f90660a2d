//! Criterion benches for the data-parallel hot paths: boundary-matrix
//! assembly, the coproduct sweep behind the identity suites, and Smith
//! normal form. With the `parallel` feature on (the default), each workload
//! also runs inside a single-threaded rayon pool for comparison; building
//! with `--no-default-features` benches the plain sequential path.

use criterion::{criterion_group, criterion_main, Criterion};

use rackhom::complex::{boundary_matrix, DEFAULT_BASIS_CAP};
use rackhom::exactlin::smith_normal_form;
use rackhom::shelf::{builtin, CoefficientSystem, Family};
use rackhom::verify::{run_suites, Suite};

fn assemble(shelf: &rackhom::shelf::FiniteShelf, degree: usize) {
    let coeff = CoefficientSystem::SelfAction;
    let m = boundary_matrix(shelf, &coeff, degree, DEFAULT_BASIS_CAP).unwrap();
    std::hint::black_box(m.rows);
}

fn suite_sweep(shelf: &rackhom::shelf::FiniteShelf, max_degree: usize) {
    let report = run_suites(
        shelf,
        &CoefficientSystem::SelfAction,
        &[Suite::Complex, Suite::Homotopy],
        max_degree,
        None,
        DEFAULT_BASIS_CAP,
    )
    .unwrap();
    assert!(report.passed());
    std::hint::black_box(report.checks.len());
}

#[cfg(feature = "parallel")]
fn single_thread_pool() -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
}

fn bench_boundary_assembly(c: &mut Criterion) {
    let shelf = builtin(Family::Dihedral(4)).unwrap();
    let mut group = c.benchmark_group("boundary_matrix_d4_self_deg5");
    group.sample_size(10);
    group.bench_function("default", |b| b.iter(|| assemble(&shelf, 5)));
    #[cfg(feature = "parallel")]
    {
        let pool = single_thread_pool();
        group.bench_function("one_thread", |b| {
            b.iter(|| pool.install(|| assemble(&shelf, 5)))
        });
    }
    group.finish();
}

fn bench_suite_sweep(c: &mut Criterion) {
    let shelf = builtin(Family::Dihedral(4)).unwrap();
    let mut group = c.benchmark_group("complex_homotopy_suites_d4_deg5");
    group.sample_size(10);
    group.bench_function("default", |b| b.iter(|| suite_sweep(&shelf, 5)));
    #[cfg(feature = "parallel")]
    {
        let pool = single_thread_pool();
        group.bench_function("one_thread", |b| {
            b.iter(|| pool.install(|| suite_sweep(&shelf, 5)))
        });
    }
    group.finish();
}

fn bench_snf(c: &mut Criterion) {
    let shelf = builtin(Family::Dihedral(3)).unwrap();
    let coeff = CoefficientSystem::Trivial;
    let m = boundary_matrix(&shelf, &coeff, 4, DEFAULT_BASIS_CAP).unwrap();
    let mut group = c.benchmark_group("snf_boundary4_d3");
    group.sample_size(10);
    group.bench_function("default", |b| {
        b.iter(|| std::hint::black_box(smith_normal_form(&m).rank()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_boundary_assembly,
    bench_suite_sweep,
    bench_snf
);
criterion_main!(benches);
