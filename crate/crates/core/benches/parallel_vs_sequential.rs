//! Rayon sweep vs. the inline sequential twins on the three hot loops:
//! the orbit census over all b, the weight-spectrum sweep, and the
//! exhaustive PGL point-set oracle. Built with default features both code
//! paths exist; `--no-default-features` collapses both sides to sequential.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use linset_core::classify::{census, census_seq, GroupFlavor};
use linset_core::linear_set::{spectra_for_all_b, spectra_for_all_b_seq};
use linset_core::oracle::{bf_pgl_equivalent, bf_pgl_equivalent_seq, OracleLimits};
use linset_core::FieldSpec;

fn bench_census(c: &mut Criterion) {
    let field = FieldSpec::new(3, 2).unwrap(); // q = 9, 6561 elements
    let mut group = c.benchmark_group("pgl_census_q9");
    group.bench_function(BenchmarkId::new("parallel", "q=9"), |bench| {
        bench.iter(|| black_box(census(&field, GroupFlavor::Pgl)));
    });
    group.bench_function(BenchmarkId::new("sequential", "q=9"), |bench| {
        bench.iter(|| black_box(census_seq(&field, GroupFlavor::Pgl)));
    });
    group.finish();
}

fn bench_spectra_sweep(c: &mut Criterion) {
    let field = FieldSpec::new(5, 1).unwrap(); // q = 5, 625 spectra of 625 evals
    let mut group = c.benchmark_group("spectrum_sweep_q5");
    group.bench_function(BenchmarkId::new("parallel", "q=5"), |bench| {
        bench.iter(|| black_box(spectra_for_all_b(&field)));
    });
    group.bench_function(BenchmarkId::new("sequential", "q=5"), |bench| {
        bench.iter(|| black_box(spectra_for_all_b_seq(&field)));
    });
    group.finish();
}

fn bench_pgl_oracle(c: &mut Criterion) {
    let field = FieldSpec::new(3, 1).unwrap(); // q = 3: 531,360 matrices per miss
    let limits = OracleLimits::default();
    // two inequivalent scattered parameters: same set size, so the "none"
    // answer costs a full group scan
    let reps: Vec<_> = census(&field, GroupFlavor::Pgl)
        .classes
        .iter()
        .filter(|cl| !cl.rep.is_zero() && cl.case == linset_core::classify::CaseLabel::Scattered)
        .map(|cl| cl.rep)
        .collect();
    let (b, inequivalent) = (reps[0], reps[1]);
    assert!(bf_pgl_equivalent(&field, b, inequivalent, &limits)
        .unwrap()
        .is_none());
    let mut group = c.benchmark_group("bf_pgl_full_scan_q3");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", "none"), |bench| {
        bench.iter(|| black_box(bf_pgl_equivalent(&field, b, inequivalent, &limits).unwrap()));
    });
    group.bench_function(BenchmarkId::new("sequential", "none"), |bench| {
        bench.iter(|| black_box(bf_pgl_equivalent_seq(&field, b, inequivalent, &limits).unwrap()));
    });
    group.finish();
}

criterion_group!(benches, bench_census, bench_spectra_sweep, bench_pgl_oracle);
criterion_main!(benches);
