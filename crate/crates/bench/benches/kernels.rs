use criterion::{black_box, criterion_group, criterion_main, Criterion};
use permgrowth::algebraic::{largest_real_root, xi_polynomial};
use permgrowth::class::{census, ClassSpec};
use permgrowth::encoding::{build_automaton, gf_from_automaton};
use permgrowth::perm::Permutation;
use permgrowth::reconstruction::verify_reconstruction;

fn containment(c: &mut Criterion) {
    let text: Permutation = "3 7 1 9 4 11 2 6 12 5 10 8".parse().unwrap();
    let pattern: Permutation = "2 4 1 5 3".parse().unwrap();
    c.bench_function("contains 5 in 12", |b| {
        b.iter(|| black_box(&text).contains(black_box(&pattern)))
    });
}

fn class_census(c: &mut Criterion) {
    let spec = ClassSpec::av(&["231", "4312", "4321"]).unwrap();
    c.bench_function("census Av(231,4312,4321) to 10", |b| {
        b.iter(|| census(black_box(&spec), 10).unwrap())
    });
}

fn automaton(c: &mut Criterion) {
    let spec = ClassSpec::av(&["321", "3412", "4123", "23451", "314625"]).unwrap();
    c.bench_function("automaton and generating function", |b| {
        b.iter(|| gf_from_automaton(&build_automaton(black_box(&spec)).unwrap()).unwrap())
    });
}

fn roots(c: &mut Criterion) {
    let p = xi_polynomial();
    c.bench_function("largest real root to 1e-12", |b| {
        b.iter(|| largest_real_root(black_box(&p), 1e-12).unwrap())
    });
}

fn reconstruction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reconstruction");
    group.sample_size(10);
    group.bench_function("length 6", |b| {
        b.iter(|| verify_reconstruction(black_box(6)))
    });
    group.finish();
}

criterion_group!(
    kernels,
    containment,
    class_census,
    automaton,
    roots,
    reconstruction
);
criterion_main!(kernels);
